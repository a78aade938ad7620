#include "sfconj/nilpotent.hpp"

#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace sfconj {

namespace {

Integer ipow(std::uint64_t p, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

unsigned valuation(Integer c, std::uint64_t p) {
  if (c < 0) c = -c;
  unsigned v = 0;
  while (c != 0 && c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

bool commutes(const TruncatedPoly& a, const TruncatedPoly& b) { return a * b == b * a; }

nlohmann::json word_to_json(const Word& w) {
  auto out = nlohmann::json::array();
  for (auto l : w) {
    const long long g = static_cast<long long>(l.generator) + 1;
    out.push_back(l.inverted ? -g : g);
  }
  return out;
}

}  // namespace

TruncatedPoly::TruncatedPoly(std::size_t rank, std::size_t degree_cap, Integer modulus)
    : rank_(rank), cap_(degree_cap), modulus_(std::move(modulus)) {
  if (modulus_ < 0) throw std::invalid_argument("TruncatedPoly: negative modulus");
}

TruncatedPoly TruncatedPoly::one(std::size_t rank, std::size_t degree_cap, Integer modulus) {
  TruncatedPoly p(rank, degree_cap, std::move(modulus));
  p.set({}, 1);
  return p;
}

TruncatedPoly TruncatedPoly::letter_image(Letter l, std::size_t rank, std::size_t degree_cap,
                                          Integer modulus) {
  if (l.generator >= rank) throw std::invalid_argument("letter outside the Magnus alphabet");
  TruncatedPoly p = one(rank, degree_cap, std::move(modulus));
  Monomial m;
  for (std::size_t d = 1; d <= degree_cap; ++d) {
    m.push_back(l.generator);
    if (!l.inverted) {
      p.set(m, 1);
      break;
    }
    p.set(m, d % 2 == 0 ? 1 : -1);
  }
  return p;
}

void TruncatedPoly::normalize(Integer& c) const {
  if (modulus_ == 0) return;
  c %= modulus_;
  if (c < 0) c += modulus_;
}

Integer TruncatedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void TruncatedPoly::set(const Monomial& m, Integer c) {
  if (m.size() > cap_) return;
  normalize(c);
  if (c == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = std::move(c);
  }
}

TruncatedPoly TruncatedPoly::operator*(const TruncatedPoly& rhs) const {
  TruncatedPoly out(rank_, std::min(cap_, rhs.cap_), modulus_);
  Monomial m;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      if (ma.size() + mb.size() > out.cap_) continue;
      m.assign(ma.begin(), ma.end());
      m.insert(m.end(), mb.begin(), mb.end());
      out.terms_[m] += ca * cb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    out.normalize(it->second);
    it = it->second == 0 ? out.terms_.erase(it) : std::next(it);
  }
  return out;
}

TruncatedPoly TruncatedPoly::operator+(const TruncatedPoly& rhs) const {
  TruncatedPoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.set(m, out.coefficient(m) + c);
  return out;
}

TruncatedPoly TruncatedPoly::operator-(const TruncatedPoly& rhs) const {
  TruncatedPoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.set(m, out.coefficient(m) - c);
  return out;
}

bool TruncatedPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

std::optional<std::size_t> TruncatedPoly::min_positive_degree() const {
  std::optional<std::size_t> best;
  for (const auto& [m, c] : terms_) {
    if (!m.empty() && (!best || m.size() < *best)) best = m.size();
  }
  return best;
}

TruncatedPoly TruncatedPoly::homogeneous(std::size_t d) const {
  TruncatedPoly out(rank_, cap_, modulus_);
  for (const auto& [m, c] : terms_) {
    if (m.size() == d) out.terms_.emplace(m, c);
  }
  return out;
}

TruncatedPoly TruncatedPoly::pow(const Integer& e) const {
  if (e < 0) throw std::invalid_argument("TruncatedPoly::pow: negative exponent");
  TruncatedPoly result = one(rank_, cap_, modulus_);
  TruncatedPoly base = *this;
  Integer k = e;
  while (k > 0) {
    if ((k & 1) != 0) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

TruncatedPoly TruncatedPoly::reduced(std::size_t cap, Integer modulus) const {
  TruncatedPoly out(rank_, cap, std::move(modulus));
  for (const auto& [m, c] : terms_) out.set(m, c);
  return out;
}

Integer MagnusParams::modulus() const { return ipow(prime, exponent); }

TruncatedPoly magnus_eval(const MagnusParams& params, const Word& w) {
  const Integer mod = params.modulus();
  TruncatedPoly out = TruncatedPoly::one(params.rank, params.cls, mod);
  for (auto l : w) out = out * TruncatedPoly::letter_image(l, params.rank, params.cls, mod);
  return out;
}

TruncatedPoly magnus_eval_integer(std::size_t rank, std::size_t cls, const Word& w) {
  TruncatedPoly out = TruncatedPoly::one(rank, cls);
  for (auto l : w) out = out * TruncatedPoly::letter_image(l, rank, cls);
  return out;
}

std::size_t lcs_class(const Word& w, std::size_t rank, std::size_t c_max) {
  const Word r = free_reduce(w);
  if (r.empty()) throw std::invalid_argument("lcs_class: trivial word");
  for (std::size_t c = 1; c <= c_max; ++c) {
    const auto d = magnus_eval_integer(rank, c, r).min_positive_degree();
    if (d) return *d;
  }
  throw std::runtime_error("lcs_class: class exceeds the limit " + std::to_string(c_max));
}

namespace {

OrderWitness build_witness(const Word& w, std::size_t rank, std::size_t cls, std::uint64_t p,
                           unsigned k, unsigned v) {
  OrderWitness out;
  out.params = {rank, cls, p, k + v};
  out.word = w;
  out.k = k;
  out.valuation = v;
  out.image = magnus_eval(out.params, w);

  const Integer order = ipow(p, k);
  if (!out.image.pow(order).is_one() || out.image.pow(order / p).is_one()) {
    throw std::logic_error("order_witness: image does not have order p^k");
  }
  out.verified_order = order;
  for (std::uint32_t g = 0; g < rank; ++g) {
    const auto x = TruncatedPoly::letter_image({g, false}, rank, cls, out.params.modulus());
    if (!commutes(out.image, x)) throw std::logic_error("order_witness: image is not central");
  }
  out.centrality_checked = true;
  return out;
}

}  // namespace

OrderWitness order_witness(const Word& g, std::size_t rank, std::uint64_t p, unsigned k,
                           std::size_t c_max) {
  if (k == 0) throw std::invalid_argument("order_witness: k must be positive");
  if (p < 2 || factorize(p).size() != 1 || factorize(p).front().second != 1) {
    throw std::invalid_argument("order_witness: p must be prime");
  }
  const Word w = free_reduce(g);
  if (w.empty()) throw std::invalid_argument("order_witness: trivial word");
  const std::size_t c = lcs_class(w, rank, c_max);
  const TruncatedPoly top = magnus_eval_integer(rank, c, w).homogeneous(c);
  unsigned v = ~0u;
  for (const auto& [m, coeff] : top.terms()) v = std::min(v, valuation(coeff, p));
  return build_witness(w, rank, c, p, k, v);
}

OrderWitness reduce_central_order(const OrderWitness& witness, unsigned target_k) {
  if (target_k == 0) throw std::invalid_argument("reduce_central_order: target must be positive");
  if (target_k > witness.k) {
    throw std::invalid_argument("reduce_central_order: target exceeds the witness order");
  }
  return build_witness(witness.word, witness.params.rank, witness.params.cls,
                       witness.params.prime, target_k, witness.valuation);
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<TruncatedPoly> CompositeWitness::image_of(const Word& w) const {
  std::vector<TruncatedPoly> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(magnus_eval(f.params, w));
  return out;
}

bool CompositeWitness::kills(const Word& w) const {
  for (const auto& f : factors) {
    if (!magnus_eval(f.params, w).is_one()) return false;
  }
  return true;
}

CompositeWitness order_witness_composite(const Word& g, std::size_t rank, std::uint64_t n,
                                         std::size_t c_max) {
  if (n == 0) throw std::invalid_argument("order_witness_composite: n must be positive");
  CompositeWitness out;
  out.order = n;
  for (auto [p, a] : factorize(n)) out.factors.push_back(order_witness(g, rank, p, a, c_max));

  auto trivial_power = [&](std::uint64_t e) {
    for (const auto& f : out.factors) {
      if (!f.image.pow(e).is_one()) return false;
    }
    return true;
  };
  if (!trivial_power(n)) throw std::logic_error("composite witness: g^n is not trivial");
  for (auto [p, a] : factorize(n)) {
    if (trivial_power(n / p)) throw std::logic_error("composite witness: order below n");
  }
  return out;
}

nlohmann::json to_json(const TruncatedPoly& poly) {
  auto terms = nlohmann::json::array();
  for (const auto& [m, c] : poly.terms()) {
    terms.push_back({{"monomial", m}, {"coefficient", c.str()}});
  }
  return {{"rank", poly.rank()},
          {"degree_cap", poly.degree_cap()},
          {"modulus", poly.modulus().str()},
          {"terms", terms}};
}

nlohmann::json to_json(const OrderWitness& w) {
  return {{"params",
           {{"rank", w.params.rank},
            {"class", w.params.cls},
            {"prime", w.params.prime},
            {"exponent", w.params.exponent}}},
          {"word", word_to_json(w.word)},
          {"k", w.k},
          {"valuation", w.valuation},
          {"verified_order", w.verified_order.str()},
          {"centrality_checked", w.centrality_checked},
          {"image", to_json(w.image)}};
}

nlohmann::json to_json(const CompositeWitness& w) {
  auto factors = nlohmann::json::array();
  for (const auto& f : w.factors) factors.push_back(to_json(f));
  return {{"order", w.order}, {"factors", factors}};
}

bool SplitCertificate::contains(const FiberedElement& g) const {
  const long long n = presentation.fiber_modulus();
  auto zero_mod = [n](long long t) { return ((t % n) + n) % n == 0; };
  if (base_is_trivial(presentation, g.base_word)) {
    return zero_mod(g.fiber_exponent + trivial_fiber(presentation, g.base_word));
  }
  return q.kills(g.base_word) && zero_mod(g.fiber_exponent);
}

SplitCertificate central_split(const SeifertPresentation& p) {
  if (p.kind() != BaseKind::surface) throw std::invalid_argument("central_split: surface base required");
  if (p.fiber_modulus() <= 0) throw std::invalid_argument("central_split: fiber modulus must be positive");
  if (!p.epsilon_trivial()) throw std::invalid_argument("central_split: fiber must be central");
  const long long n_mod = p.fiber_modulus();
  const long long s = p.euler_degree() < 0 ? -p.euler_degree() : p.euler_degree();
  const auto n = static_cast<std::uint64_t>(n_mod / std::gcd(n_mod, s));
  return {p, n, order_witness_composite(p.relator(), p.rank(), n)};
}

SplitValidation validate_central_split(const SplitCertificate& cert, std::size_t samples,
                                       std::uint64_t seed) {
  const SeifertPresentation& p = cert.presentation;
  const SurfacePresentation& sp = p.surface_presentation();
  const long long n_mod = p.fiber_modulus();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pieces(1, 6);
  std::uniform_int_distribution<std::size_t> conj_len(0, 4);
  std::uniform_int_distribution<std::size_t> shift(0, sp.relator_length() - 1);
  std::bernoulli_distribution flip(0.5);

  SplitValidation out;
  const std::size_t max_attempts = samples * 200;
  while (out.accepted < samples && out.attempts < max_attempts) {
    ++out.attempts;
    Word w;
    for (int i = pieces(rng); i > 0; --i) {
      const Word u = random_reduced_word(p.rank(), conj_len(rng), rng);
      Word r = sp.relator().rotated(shift(rng));
      if (flip(rng)) r = r.inverse();
      w = w * u * r * u.inverse();
    }
    w = free_reduce(w);
    if (!cert.q.kills(w)) continue;
    ++out.accepted;
    if (!is_trivial(sp, w)) throw std::logic_error("validate_central_split: sample not trivial");
    const long long t = trivial_fiber(p, w);
    if (((t % n_mod) + n_mod) % n_mod != 0) ++out.violations;
  }
  return out;
}

nlohmann::json to_json(const SplitCertificate& cert) {
  return {{"genus", cert.presentation.genus()},
          {"euler_degree", cert.presentation.euler_degree()},
          {"fiber_modulus", cert.presentation.fiber_modulus()},
          {"relator_order", cert.relator_order},
          {"q", to_json(cert.q)}};
}

}  // namespace sfconj
