#include "sfconj/surface.hpp"

#include <deque>
#include <stdexcept>
#include <string>

namespace sfconj {

namespace {

std::uint64_t parity_mask(std::span<const Letter> letters) {
  std::uint64_t mask = 0;
  for (auto l : letters) mask ^= std::uint64_t{1} << l.generator;
  return mask;
}

std::size_t letter_index(Letter l) { return 2 * l.generator + (l.inverted ? 1 : 0); }

struct Match {
  std::size_t position;
  std::uint32_t variant;
  std::size_t length;
};

std::size_t match_length(const SurfacePresentation& p, const std::vector<Letter>& w,
                         std::size_t pos, std::uint32_t variant) {
  const Word& v = p.variants()[variant].word;
  const std::size_t limit = std::min(v.size(), w.size() - pos);
  std::size_t l = 0;
  while (l < limit && w[pos + l] == v[l]) ++l;
  return l;
}

void free_reduce_in_place(std::vector<Letter>& w) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (top > 0 && cancels(w[top - 1], w[i])) {
      --top;
    } else {
      w[top++] = w[i];
    }
  }
  w.resize(top);
}

void apply_move(const SurfacePresentation& p, std::vector<Letter>& w, const Match& m,
                DehnTrace& trace) {
  const RelatorVariant& v = p.variants()[m.variant];
  DehnMove move;
  move.position = m.position;
  move.variant = m.variant;
  move.length = m.length;
  move.signed_degree = v.sign;
  move.parity = parity_mask(std::span<const Letter>(w.data(), m.position)) ^ v.shift_parity;
  trace.moves.push_back(move);

  std::vector<Letter> out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(m.position));
  // Subword == v[0, length) and v[0, length) * v[length, n) == 1.
  for (std::size_t i = v.word.size(); i > m.length; --i) {
    out.push_back(v.word[i - 1].inverse());
  }
  out.insert(out.end(), w.begin() + static_cast<long>(m.position + m.length), w.end());
  free_reduce_in_place(out);
  w = std::move(out);
}

std::optional<Match> first_match(const SurfacePresentation& p, const std::vector<Letter>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (auto vi : p.variants_starting_with(w[i])) {
      const std::size_t l = match_length(p, w, i, vi);
      if (l > p.half()) return Match{i, vi, l};
    }
  }
  return std::nullopt;
}

}  // namespace

SurfacePresentation::SurfacePresentation(int genus) : genus_(genus) {
  if (genus < 2 || genus > kMaxGenus) {
    throw std::invalid_argument("surface genus must be between 2 and " +
                                std::to_string(kMaxGenus));
  }
  std::vector<std::string> names;
  std::vector<Letter> rel;
  for (int i = 1; i <= genus; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
    const auto a = static_cast<std::uint32_t>(2 * (i - 1));
    const auto b = a + 1;
    rel.insert(rel.end(), {Letter{a, false}, Letter{b, false}, Letter{a, true}, Letter{b, true}});
  }
  alphabet_ = Alphabet(std::move(names));
  relator_ = Word(std::move(rel));

  by_first_letter_.assign(2 * alphabet_.rank(), {});
  for (int sign : {1, -1}) {
    const Word base = sign > 0 ? relator_ : relator_.inverse();
    for (std::size_t k = 0; k < base.size(); ++k) {
      RelatorVariant v;
      v.word = base.rotated(k);
      v.sign = sign;
      v.shift = base.subword(0, k);
      v.shift_parity = parity_mask(v.shift.letters());
      by_first_letter_[letter_index(v.word.front())].push_back(
          static_cast<std::uint32_t>(variants_.size()));
      variants_.push_back(std::move(v));
    }
  }
}

std::span<const std::uint32_t> SurfacePresentation::variants_starting_with(Letter l) const {
  return by_first_letter_[letter_index(l)];
}

long long DehnTrace::total_degree() const {
  long long d = 0;
  for (const auto& m : moves) d += m.signed_degree;
  return d;
}

long long DehnTrace::twisted_degree(std::span<const int> epsilon) const {
  std::uint64_t negative = 0;
  for (std::size_t g = 0; g < epsilon.size(); ++g) {
    if (epsilon[g] < 0) negative |= std::uint64_t{1} << g;
  }
  long long d = 0;
  for (const auto& m : moves) {
    const bool flip = __builtin_popcountll(m.parity & negative) % 2 == 1;
    d += flip ? -m.signed_degree : m.signed_degree;
  }
  return d;
}

DehnResult dehn_reduce(const SurfacePresentation& p, const Word& w) {
  std::vector<Letter> cur(w.begin(), w.end());
  free_reduce_in_place(cur);
  DehnTrace trace;
  while (auto m = first_match(p, cur)) apply_move(p, cur, *m, trace);
  return {Word(std::move(cur)), std::move(trace)};
}

DehnResult dehn_reduce(const SurfacePresentation& p, const Word& w, std::mt19937_64& schedule) {
  std::vector<Letter> cur(w.begin(), w.end());
  free_reduce_in_place(cur);
  DehnTrace trace;
  std::vector<Match> options;
  for (;;) {
    options.clear();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (auto vi : p.variants_starting_with(cur[i])) {
        const std::size_t l = match_length(p, cur, i, vi);
        // Any match length beyond half is a legal move.
        for (std::size_t len = p.half() + 1; len <= l; ++len) options.push_back({i, vi, len});
      }
    }
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    apply_move(p, cur, options[pick(schedule)], trace);
  }
  return {Word(std::move(cur)), std::move(trace)};
}

bool is_trivial(const SurfacePresentation& p, const Word& w) {
  return dehn_reduce(p, w).reduced.empty();
}

long long r_degree(const SurfacePresentation& p, const Word& w) {
  auto r = dehn_reduce(p, w);
  if (!r.reduced.empty()) throw std::invalid_argument("r_degree: word is not trivial");
  return r.trace.total_degree();
}

long long twisted_r_degree(const SurfacePresentation& p, const Word& w,
                           std::span<const int> epsilon) {
  auto r = dehn_reduce(p, w);
  if (!r.reduced.empty()) throw std::invalid_argument("r_degree: word is not trivial");
  return r.trace.twisted_degree(epsilon);
}

ConjugateForm cyclic_dehn_minimize(const SurfacePresentation& p, const Word& w) {
  Word cur = dehn_reduce(p, w).reduced;
  Word conj;
  for (;;) {
    std::size_t lo = 0;
    std::size_t hi = cur.size();
    while (hi - lo >= 2 && cancels(cur[lo], cur[hi - 1])) {
      ++lo;
      --hi;
    }
    if (lo > 0) {
      conj = conj * cur.subword(0, lo);
      cur = cur.subword(lo, hi - lo);
    }
    bool improved = false;
    for (std::size_t k = 1; k < cur.size(); ++k) {
      Word reduced = dehn_reduce(p, cur.rotated(k)).reduced;
      if (reduced.size() < cur.size()) {
        conj = conj * cur.subword(0, k);
        cur = std::move(reduced);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {cur, free_reduce(conj)};
}

ConjugacyClosure conjugacy_closure(const SurfacePresentation& p, const Word& w) {
  ConjugateForm start = cyclic_dehn_minimize(p, w);
  const std::size_t half = p.half();

restart:
  ConjugacyClosure out;
  out.length = start.word.size();
  const std::size_t n = out.length;
  std::deque<std::pair<Word, Word>> queue;

  // Returns false if a strictly shorter conjugate was found (stored in start).
  auto consider = [&](const Word& x, const Word& conj) -> bool {
    ConjugateForm f = cyclic_dehn_minimize(p, x);
    Word c = free_reduce(conj * f.conjugator);
    if (f.word.size() < n) {
      start = {std::move(f.word), std::move(c)};
      return false;
    }
    if (f.word.size() > n) return true;
    const std::size_t k = least_rotation(f.word);
    Word canonical = f.word.rotated(k);
    c = free_reduce(c * f.word.subword(0, k));
    if (out.representatives.emplace(canonical, c).second) queue.emplace_back(canonical, c);
    return true;
  };

  if (!consider(start.word, start.conjugator)) goto restart;
  if (n == 0) return out;

  while (!queue.empty()) {
    auto [v, c] = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < n; ++k) {
      const Word vk = v.rotated(k);
      const Word ck = c * v.subword(0, k);
      if (n < half) continue;
      for (auto vi : p.variants_starting_with(vk.front())) {
        const Word& rel = p.variants()[vi].word;
        bool matches = true;
        for (std::size_t i = 0; i < half && matches; ++i) matches = vk[i] == rel[i];
        if (!matches) continue;
        // vk == s * y with s the first half of rel; s == t^-1 for the second half t.
        const Word flipped = rel.subword(half, half).inverse() * vk.subword(half, n - half);
        if (!consider(flipped, ck)) goto restart;
      }
    }
    for (std::uint32_t g = 0; g < p.rank(); ++g) {
      for (bool inv : {false, true}) {
        const Word e{Letter{g, inv}};
        if (!consider(e.inverse() * v * e, c * e)) goto restart;
      }
    }
  }
  return out;
}

std::optional<Word> are_conjugate_surface(const SurfacePresentation& p, const Word& u,
                                          const Word& v) {
  const bool u_trivial = is_trivial(p, u);
  const bool v_trivial = is_trivial(p, v);
  if (u_trivial || v_trivial) {
    if (u_trivial && v_trivial) return Word{};
    return std::nullopt;
  }

  auto verified = [&](Word c) -> std::optional<Word> {
    c = free_reduce(c);
    if (!is_trivial(p, c.inverse() * u * c * v.inverse())) {
      throw std::logic_error("surface conjugacy: witness failed verification");
    }
    return c;
  };

  const ConjugacyClosure cu = conjugacy_closure(p, u);
  const ConjugacyClosure cv = conjugacy_closure(p, v);

  // c_u^-1 u c_u == V == c_v^-1 v c_v.
  for (const auto& [word, conj_v] : cv.representatives) {
    auto it = cu.representatives.find(word);
    if (it != cu.representatives.end()) return verified(it->second * conj_v.inverse());
  }

  // Thin annular diagrams: rotations related by a conjugator that is a piece.
  const auto& [vw, vc] = *cv.representatives.begin();
  std::vector<Word> pieces{Word{}};
  for (std::uint32_t g = 0; g < p.rank(); ++g) {
    pieces.push_back(Word{Letter{g, false}});
    pieces.push_back(Word{Letter{g, true}});
  }
  for (const auto& [uw, uc] : cu.representatives) {
    for (std::size_t k = 0; k < vw.size(); ++k) {
      const Word a = vw.subword(0, k);
      const Word vk_inv = vw.rotated(k).inverse();
      for (const auto& e : pieces) {
        if (is_trivial(p, e.inverse() * uw * e * vk_inv)) {
          return verified(uc * e * a.inverse() * vc.inverse());
        }
      }
    }
  }
  return std::nullopt;
}

PrimitiveRoot centralizer_root_surface(const SurfacePresentation& p, const Word& w) {
  if (is_trivial(p, w)) throw std::invalid_argument("centralizer_root_surface: trivial word");
  const ConjugacyClosure closure = conjugacy_closure(p, w);
  const Word* best = nullptr;
  const Word* best_conj = nullptr;
  std::size_t best_period = closure.length + 1;
  for (const auto& [word, conj] : closure.representatives) {
    const std::size_t d = CyclicWord(word).period();
    if (d < best_period) {
      best_period = d;
      best = &word;
      best_conj = &conj;
    }
  }
  const long long exponent = static_cast<long long>(closure.length / best_period);
  if (exponent == 1) return {free_reduce(w), 1};
  // w == c V c^-1 with V == Y^exponent.
  const Word root = free_reduce(*best_conj * best->subword(0, best_period) * best_conj->inverse());
  if (!is_trivial(p, root.power(exponent) * w.inverse())) {
    throw std::logic_error("centralizer_root_surface: root failed verification");
  }
  return {root, exponent};
}

}  // namespace sfconj
