#include "sfconj/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace sfconj {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  bool has_lower = false;
  for (unsigned char ch : name) {
    if (std::isspace(ch) || ch == '^' || std::isupper(ch)) return false;
    if (std::islower(ch)) has_lower = true;
  }
  return has_lower;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_name(n)) {
      throw std::invalid_argument("invalid generator name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate generator name '" + n + "'");
    }
  }
}

const std::string& Alphabet::name(std::uint32_t generator) const {
  if (generator >= names_.size()) {
    throw std::out_of_range("generator index out of range");
  }
  return names_[generator];
}

std::optional<std::uint32_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

Alphabet Alphabet::extended(std::string extra) const {
  auto names = names_;
  names.push_back(std::move(extra));
  return Alphabet(std::move(names));
}

Word Word::generator(std::uint32_t g, int exponent) {
  std::vector<Letter> out(static_cast<std::size_t>(std::abs(exponent)),
                          Letter{g, exponent < 0});
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + rhs.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::power(long long k) const {
  const Word base = k < 0 ? inverse() : *this;
  const auto reps = static_cast<std::size_t>(k < 0 ? -k : k);
  std::vector<Letter> out;
  out.reserve(base.size() * reps);
  for (std::size_t i = 0; i < reps; ++i) {
    out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  }
  return Word(std::move(out));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (pos + len > letters_.size()) throw std::out_of_range("subword");
  return Word(std::vector<Letter>(letters_.begin() + static_cast<long>(pos),
                                  letters_.begin() + static_cast<long>(pos + len)));
}

Word Word::rotated(std::size_t k) const {
  if (letters_.empty()) return *this;
  k %= letters_.size();
  std::vector<Letter> out;
  out.reserve(letters_.size());
  out.insert(out.end(), letters_.begin() + static_cast<long>(k), letters_.end());
  out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<long>(k));
  return Word(std::move(out));
}

std::vector<long long> Word::exponent_sums(std::size_t rank) const {
  std::vector<long long> sums(rank, 0);
  for (auto l : letters_) {
    if (l.generator < rank) sums[l.generator] += l.inverted ? -1 : 1;
  }
  return sums;
}

std::size_t least_rotation(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Letter a = w[(k + i) % n];
      const Letter b = w[(best + i) % n];
      if (a != b) {
        if (a < b) best = k;
        break;
      }
    }
  }
  return best;
}

CyclicWord::CyclicWord(const Word& w) : word_(w.rotated(least_rotation(w))) {
  if (!is_cyclically_reduced(w)) {
    throw std::invalid_argument("CyclicWord requires a cyclically reduced word");
  }
}

std::size_t CyclicWord::period() const {
  const std::size_t n = word_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) {
      periodic = word_[i] == word_[i - d];
    }
    if (periodic) return d;
  }
  return n;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (auto l : w) {
    if (!stack.empty() && cancels(stack.back(), l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (cancels(w[i - 1], w[i])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  return is_freely_reduced(w) && (w.size() < 2 || !cancels(w.front(), w.back()));
}

CyclicReduction cyclic_reduce(const Word& w) {
  const Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && cancels(r[lo], r[hi - 1])) {
    ++lo;
    --hi;
  }
  // r == u * c * u^-1 with u = r[0, lo).
  const Word u = r.subword(0, lo);
  const Word c = r.subword(lo, hi - lo);
  // c == a * (b a) * a^-1 where (b a) is the least rotation.
  const std::size_t k = least_rotation(c);
  const Word a = c.subword(0, k);
  return {CyclicWord(c), free_reduce(u * a)};
}

std::optional<Word> free_conjugate(const Word& u, const Word& v) {
  const auto cu = cyclic_reduce(u);
  const auto cv = cyclic_reduce(v);
  if (cu.core != cv.core) return std::nullopt;
  return free_reduce(cu.conjugator * cv.conjugator.inverse());
}

PrimitiveRoot primitive_root(const Word& w) {
  const Word r = free_reduce(w);
  if (r.empty()) throw std::invalid_argument("primitive_root of the empty word");
  const auto cr = cyclic_reduce(r);
  const std::size_t d = cr.core.period();
  const Word core_root = cr.core.word().subword(0, d);
  return {free_reduce(cr.conjugator * core_root * cr.conjugator.inverse()),
          static_cast<long long>(cr.core.size() / d)};
}

Word random_reduced_word(std::size_t rank, std::size_t length, std::mt19937_64& rng) {
  if (rank == 0) throw std::invalid_argument("random_reduced_word: empty alphabet");
  std::uniform_int_distribution<std::size_t> pick(0, 2 * rank - 1);
  std::vector<Letter> out;
  out.reserve(length);
  while (out.size() < length) {
    const std::size_t i = pick(rng);
    const Letter l{static_cast<std::uint32_t>(i / 2), i % 2 == 1};
    if (!out.empty() && cancels(out.back(), l)) continue;
    out.push_back(l);
  }
  return Word(std::move(out));
}

std::string to_string(const Word& w, const Alphabet& alphabet) {
  std::string out;
  for (auto l : w) {
    if (!out.empty()) out += ' ';
    const std::string& n = alphabet.name(l.generator);
    if (!l.inverted) {
      out += n;
      continue;
    }
    std::string upper = n;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    out += upper;
  }
  return out;
}

}  // namespace sfconj
