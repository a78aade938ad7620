#include "sfconj/seifert.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sfconj {

namespace {

long long mod_floor(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

long long normalize_fiber(const SeifertPresentation& p, long long m) {
  return p.fiber_modulus() > 0 ? mod_floor(m, p.fiber_modulus()) : m;
}

std::vector<int> checked_epsilon(std::vector<int> epsilon, std::size_t rank) {
  if (epsilon.empty()) epsilon.assign(rank, 1);
  if (epsilon.size() != rank) {
    throw std::invalid_argument("epsilon must have one entry per base generator");
  }
  for (int e : epsilon) {
    if (e != 1 && e != -1) throw std::invalid_argument("epsilon values must be +1 or -1");
  }
  return epsilon;
}

// Signed count of relator squares enclosed by a closed lattice path, each
// square with lower-left corner (a, b) weighted by epsilon_x^a epsilon_y^b.
long long torus_twisted_area(const Word& w, int eps_x, int eps_y) {
  struct Step {
    long long column;
    long long height;
    int sign;
  };
  std::vector<Step> steps;
  long long a = 0;
  long long b = 0;
  long long top = 0;
  for (auto l : w) {
    if (l.generator == 0) {
      if (!l.inverted) {
        steps.push_back({a, b, +1});
        ++a;
      } else {
        --a;
        steps.push_back({a, b, -1});
      }
    } else {
      b += l.inverted ? -1 : 1;
      top = std::max(top, b);
    }
  }
  auto ipow = [](int e, long long k) { return (k % 2 != 0 && e < 0) ? -1 : 1; };
  long long total = 0;
  for (const auto& s : steps) {
    // Squares (column, j) for height <= j < top lie above this edge.
    long long column_sum = 0;
    if (eps_y > 0) {
      column_sum = top - s.height;
    } else {
      for (long long j = s.height; j < top; ++j) column_sum += ipow(eps_y, j);
    }
    total += s.sign * ipow(eps_x, s.column) * column_sum;
  }
  return total;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Returns (g, x, y) with a x + b y == g == gcd(a, b) >= 0.
std::tuple<long long, long long, long long> ext_gcd(long long a, long long b) {
  long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

FiberedElement base_element(const Word& w) { return {free_reduce(w), 0}; }

// n with c^-1 g c == g h^n, for c in the preimage of the centralizer.
long long delta(const SeifertPresentation& p0, const FiberedElement& g, const FiberedElement& c) {
  const FiberedElement d = multiply(p0, inverse(p0, g), conjugate_by(p0, g, c));
  return d.fiber_exponent + trivial_fiber(p0, d.base_word);
}

// Generators of C = {c : c^-1 g c in g<h>} split into the index <= 2 subgroup
// C+ acting trivially on h, plus one element y of C - C+ when it exists.
struct Lattice {
  LambdaPair pair;
  std::vector<FiberedElement> plus_generators;
  std::vector<long long> plus_deltas;
  std::optional<FiberedElement> flip;
  long long flip_delta = 0;
};

std::vector<FiberedElement> centralizer_generators(const SeifertPresentation& p0,
                                                   const FiberedElement& g) {
  std::vector<FiberedElement> gens;
  const Word& w = g.base_word;
  if (base_is_trivial(p0, w) || p0.kind() == BaseKind::torus) {
    for (std::uint32_t x = 0; x < p0.rank(); ++x) gens.push_back(base_element(Word::generator(x)));
  } else if (p0.kind() == BaseKind::free) {
    gens.push_back(base_element(primitive_root(w).root));
  } else {
    gens.push_back(base_element(centralizer_root_surface(p0.surface_presentation(), w).root));
  }
  gens.push_back({Word{}, 1});
  return gens;
}

Lattice compute_lattice(const SeifertPresentation& p0, const FiberedElement& g) {
  Lattice lat;
  const auto gens = centralizer_generators(p0, g);
  for (const auto& c : gens) {
    if (p0.epsilon_of(c.base_word) < 0) {
      lat.flip = c;
      lat.flip_delta = delta(p0, g, c);
      break;
    }
  }
  // Schreier generators of C+ for the transversal {1, y}: c for epsilon(c) = +1
  // and c y^-1 for epsilon(c) = -1; the others repeat these deltas up to sign.
  for (const auto& c : gens) {
    FiberedElement e = c;
    if (p0.epsilon_of(c.base_word) < 0) {
      if (c == *lat.flip) continue;
      e = multiply(p0, c, inverse(p0, *lat.flip));
    }
    lat.plus_generators.push_back(e);
    lat.plus_deltas.push_back(delta(p0, g, e));
  }
  long long lambda = 0;
  for (long long d : lat.plus_deltas) lambda = gcd_ll(lambda, d);
  lat.pair.lambda = lambda;
  if (lat.flip) {
    lat.pair.lambda0 = lambda > 0 ? mod_floor(lat.flip_delta, lambda) : lat.flip_delta;
  }
  return lat;
}

// Element of C+ with delta == target; target must be a multiple of lambda.
FiberedElement plus_element_with_delta(const SeifertPresentation& p0, const Lattice& lat,
                                       long long target) {
  if (target == 0) return {};
  long long g = 0;
  std::vector<long long> coeff(lat.plus_deltas.size(), 0);
  for (std::size_t i = 0; i < lat.plus_deltas.size(); ++i) {
    auto [ng, a, b] = ext_gcd(g, lat.plus_deltas[i]);
    for (std::size_t j = 0; j < i; ++j) coeff[j] *= a;
    coeff[i] = b;
    g = ng;
  }
  if (g == 0 || target % g != 0) throw std::logic_error("fiber offset outside the lattice");
  FiberedElement out;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i] == 0) continue;
    out = multiply(p0, out, power(p0, lat.plus_generators[i], coeff[i] * (target / g)));
  }
  return out;
}

// Element c of C with delta(c) == n, for n in the lattice.
std::optional<FiberedElement> element_with_delta(const SeifertPresentation& p0, const Lattice& lat,
                                                 long long n) {
  const long long lambda = lat.pair.lambda;
  const bool in_plus = lambda > 0 ? n % lambda == 0 : n == 0;
  if (in_plus) return plus_element_with_delta(p0, lat, n);
  if (lat.flip) {
    // delta(c+ y) == -delta(c+) + delta(y).
    const long long need = lat.flip_delta - n;
    const bool ok = lambda > 0 ? need % lambda == 0 : need == 0;
    if (ok) return multiply(p0, plus_element_with_delta(p0, lat, need), *lat.flip);
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::free:
      return "free";
    case BaseKind::torus:
      return "torus";
    case BaseKind::surface:
      return "surface";
  }
  return "?";
}

SeifertPresentation::SeifertPresentation(BaseKind kind, int genus, Alphabet base,
                                         std::vector<int> epsilon, long long euler_degree,
                                         long long fiber_modulus)
    : kind_(kind),
      genus_(genus),
      base_alphabet_(std::move(base)),
      epsilon_(checked_epsilon(std::move(epsilon), base_alphabet_.rank())),
      euler_degree_(euler_degree),
      fiber_modulus_(fiber_modulus) {
  if (fiber_modulus < 0) throw std::invalid_argument("fiber modulus must be >= 0");
  if (base_alphabet_.find(kFiberName)) {
    throw std::invalid_argument("base generator name collides with the fiber letter 'h'");
  }
  mixed_alphabet_ = base_alphabet_.extended(std::string(kFiberName));
  if (kind == BaseKind::torus) {
    relator_ = Word{{0, false}, {1, false}, {0, true}, {1, true}};
  } else if (kind == BaseKind::surface) {
    surface_.emplace(genus);
    relator_ = surface_->relator();
  } else if (euler_degree != 0) {
    throw std::invalid_argument("free bases carry no Euler degree");
  }
}

SeifertPresentation SeifertPresentation::free(int rank, std::vector<int> epsilon,
                                              long long fiber_modulus,
                                              std::vector<std::string> names) {
  if (rank < 1) throw std::invalid_argument("free rank must be >= 1");
  if (names.empty()) {
    if (rank <= 3) {
      const char* defaults[] = {"x", "y", "z"};
      names.assign(defaults, defaults + rank);
    } else {
      for (int i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
    }
  }
  if (names.size() != static_cast<std::size_t>(rank)) {
    throw std::invalid_argument("generator names must match the free rank");
  }
  return SeifertPresentation(BaseKind::free, 0, Alphabet(std::move(names)), std::move(epsilon), 0,
                             fiber_modulus);
}

SeifertPresentation SeifertPresentation::torus(long long euler_degree, std::vector<int> epsilon,
                                               long long fiber_modulus) {
  return SeifertPresentation(BaseKind::torus, 1, Alphabet({"x", "y"}), std::move(epsilon),
                             euler_degree, fiber_modulus);
}

SeifertPresentation SeifertPresentation::surface(int genus, long long euler_degree,
                                                 std::vector<int> epsilon,
                                                 long long fiber_modulus) {
  const SurfacePresentation sp(genus);
  return SeifertPresentation(BaseKind::surface, genus, sp.alphabet(), std::move(epsilon),
                             euler_degree, fiber_modulus);
}

bool SeifertPresentation::epsilon_trivial() const {
  for (int e : epsilon_) {
    if (e < 0) return false;
  }
  return true;
}

const SurfacePresentation& SeifertPresentation::surface_presentation() const {
  if (!surface_) throw std::logic_error("presentation has no surface base");
  return *surface_;
}

int SeifertPresentation::epsilon_of(const Word& base_word) const {
  int e = 1;
  for (auto l : base_word) {
    if (l.generator >= rank()) throw std::invalid_argument("epsilon_of: not a base word");
    e *= epsilon_[l.generator];
  }
  return e;
}

SeifertPresentation SeifertPresentation::with_fiber_modulus(long long n) const {
  if (n < 0) throw std::invalid_argument("fiber modulus must be >= 0");
  SeifertPresentation copy = *this;
  copy.fiber_modulus_ = n;
  return copy;
}

FiberedElement collect(const SeifertPresentation& p, const Word& mixed) {
  std::vector<Letter> base;
  long long m = 0;
  const auto h = p.fiber_generator();
  for (auto l : mixed) {
    if (l.generator == h) {
      m += l.inverted ? -1 : 1;
    } else if (l.generator < h) {
      // h^m x == x h^(m epsilon(x)).
      m *= p.epsilon()[l.generator];
      base.push_back(l);
    } else {
      throw std::invalid_argument("collect: letter outside the mixed alphabet");
    }
  }
  return {free_reduce(Word(std::move(base))), normalize_fiber(p, m)};
}

Word to_mixed_word(const SeifertPresentation& p, const FiberedElement& g) {
  return g.base_word * Word::generator(p.fiber_generator(), static_cast<int>(g.fiber_exponent));
}

FiberedElement multiply(const SeifertPresentation& p, const FiberedElement& a,
                        const FiberedElement& b) {
  return {free_reduce(a.base_word * b.base_word),
          normalize_fiber(p, a.fiber_exponent * p.epsilon_of(b.base_word) + b.fiber_exponent)};
}

FiberedElement inverse(const SeifertPresentation& p, const FiberedElement& a) {
  // (w h^m)^-1 == h^-m w^-1 == w^-1 h^(-m epsilon(w)).
  return {a.base_word.inverse(),
          normalize_fiber(p, -a.fiber_exponent * p.epsilon_of(a.base_word))};
}

FiberedElement power(const SeifertPresentation& p, const FiberedElement& a, long long k) {
  const FiberedElement base = k < 0 ? inverse(p, a) : a;
  FiberedElement out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out = multiply(p, out, base);
  return out;
}

FiberedElement conjugate_by(const SeifertPresentation& p, const FiberedElement& g,
                            const FiberedElement& c) {
  return multiply(p, multiply(p, inverse(p, c), g), c);
}

bool base_is_trivial(const SeifertPresentation& p, const Word& base_word) {
  switch (p.kind()) {
    case BaseKind::free:
      return free_reduce(base_word).empty();
    case BaseKind::torus: {
      const auto sums = base_word.exponent_sums(2);
      return sums[0] == 0 && sums[1] == 0;
    }
    case BaseKind::surface:
      return is_trivial(p.surface_presentation(), base_word);
  }
  return false;
}

long long trivial_fiber(const SeifertPresentation& p, const Word& base_word) {
  switch (p.kind()) {
    case BaseKind::free:
      if (!free_reduce(base_word).empty()) {
        throw std::invalid_argument("trivial_fiber: word is not trivial in the base");
      }
      return 0;
    case BaseKind::torus: {
      const Word w = free_reduce(base_word);
      if (!base_is_trivial(p, w)) {
        throw std::invalid_argument("trivial_fiber: word is not trivial in the base");
      }
      return p.euler_degree() * torus_twisted_area(w, p.epsilon()[0], p.epsilon()[1]);
    }
    case BaseKind::surface:
      return p.euler_degree() *
             twisted_r_degree(p.surface_presentation(), base_word, p.epsilon());
  }
  return 0;
}

bool equal(const SeifertPresentation& p, const FiberedElement& g1, const FiberedElement& g2) {
  const FiberedElement d = multiply(p, g1, inverse(p, g2));
  if (!base_is_trivial(p, d.base_word)) return false;
  const long long t = d.fiber_exponent + trivial_fiber(p, d.base_word);
  return p.fiber_modulus() == 0 ? t == 0 : mod_floor(t, p.fiber_modulus()) == 0;
}

bool LambdaPair::contains(long long n) const {
  auto in = [&](long long k) { return lambda == 0 ? k == 0 : k % lambda == 0; };
  return in(n) || (lambda0 && in(n - *lambda0));
}

LambdaPair lambda_invariants(const SeifertPresentation& p, const FiberedElement& g) {
  if (p.fiber_modulus() != 0) {
    throw std::invalid_argument("lambda_invariants requires an infinite cyclic fiber");
  }
  return compute_lattice(p, g).pair;
}

std::optional<Word> are_conjugate(const SeifertPresentation& p, const FiberedElement& g1,
                                  const FiberedElement& g2) {
  const SeifertPresentation p0 = p.with_fiber_modulus(0);
  const Word& w1 = g1.base_word;
  const Word& w2 = g2.base_word;

  std::optional<Word> base_conj;
  switch (p.kind()) {
    case BaseKind::free:
      base_conj = free_conjugate(w1, w2);
      break;
    case BaseKind::torus:
      // The base Z^2 is abelian: conjugate iff equal.
      if (w1.exponent_sums(2) == w2.exponent_sums(2)) base_conj = Word{};
      break;
    case BaseKind::surface:
      base_conj = are_conjugate_surface(p.surface_presentation(), w1, w2);
      break;
  }
  if (!base_conj) return std::nullopt;

  const FiberedElement b = base_element(*base_conj);
  const FiberedElement aligned = conjugate_by(p0, g1, b);
  const FiberedElement diff = multiply(p0, inverse(p0, aligned), g2);
  // aligned * h^n == g2.
  const long long n = diff.fiber_exponent + trivial_fiber(p0, diff.base_word);

  const Lattice lat = compute_lattice(p0, aligned);
  std::optional<FiberedElement> c;
  const long long modulus = p.fiber_modulus();
  if (modulus == 0) {
    c = element_with_delta(p0, lat, n);
  } else {
    // Smallest lattice point congruent to n modulo N.
    std::vector<long long> candidates;
    const long long lambda = lat.pair.lambda;
    for (long long k = -modulus; k <= modulus; ++k) {
      if (lambda == 0 && k != 0) continue;
      candidates.push_back(k * lambda);
      if (lat.pair.lambda0) candidates.push_back(k * lambda + *lat.pair.lambda0);
    }
    std::optional<long long> best;
    for (long long l : candidates) {
      if (mod_floor(l - n, modulus) != 0) continue;
      if (!best || std::abs(l) < std::abs(*best)) best = l;
    }
    if (best) c = element_with_delta(p0, lat, *best);
  }
  if (!c) return std::nullopt;

  Word witness = free_reduce(b.base_word * to_mixed_word(p0, *c));
  if (!equal(p, conjugate_by(p, g1, collect(p, witness)), g2)) {
    throw std::logic_error("are_conjugate: witness failed verification");
  }
  return witness;
}

}  // namespace sfconj
