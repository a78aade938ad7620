#include "sfconj/explorer.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>

#include "sfconj/nilpotent.hpp"
#include "sfconj/parse.hpp"

namespace sfconj {

SearchBudget SearchBudget::from_env() {
  SearchBudget b;
  if (const char* v = std::getenv("SFCONJ_MAX_CANDIDATES")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) b.max_candidates = n;
  }
  return b;
}

const char* to_string(WitnessOutcome outcome) {
  switch (outcome) {
    case WitnessOutcome::conjugate:
      return "conjugate";
    case WitnessOutcome::certificate:
      return "certificate";
    case WitnessOutcome::budget_exhausted:
      return "budget_exhausted";
  }
  return "?";
}

namespace {

struct Target {
  std::string name;
  FiniteGroupTable table;
  /// Abelian targets use only the canonical map: generator i -> images[i], h -> images[rank].
  std::optional<std::vector<Element>> canonical;
};

using TargetPtr = std::shared_ptr<const Target>;

std::mutex cache_mutex;
std::map<std::string, TargetPtr> cache;

template <class Build>
TargetPtr cached(const std::string& name, Build build) {
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  TargetPtr t;
  try {
    t = build();
  } catch (const GroupTooLarge&) {
    t = nullptr;
  }
  std::lock_guard lock(cache_mutex);
  return cache.emplace(name, t).first->second;
}

// (Z/q)^rank x Z/e with the canonical map onto the unit vectors.
TargetPtr abelian_target(std::size_t rank, std::uint32_t q, std::uint32_t e) {
  const std::string name = "(Z/" + std::to_string(q) + ")^" + std::to_string(rank) + " x Z/" +
                           std::to_string(e);
  return cached(name, [&]() -> TargetPtr {
    using V = std::vector<std::uint32_t>;
    std::vector<std::uint32_t> moduli(rank, q);
    moduli.push_back(e);
    auto mul = [moduli](const V& a, const V& b) {
      V out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % moduli[i];
      return out;
    };
    auto label = [](const V& a) {
      std::string s = "(";
      for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
      return s + ")";
    };
    std::vector<V> gens;
    for (std::size_t i = 0; i <= rank; ++i) {
      V v(rank + 1, 0);
      v[i] = 1 % moduli[i];
      gens.push_back(v);
    }
    auto g = generate_group(V(rank + 1, 0), gens, mul, label, 4096);
    return std::make_shared<Target>(Target{name, std::move(g.table), g.generators});
  });
}

std::string poly_label(const TruncatedPoly& p) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += "+";
    if (c != 1 || m.empty()) out += c.str();
    for (auto g : m) out += "X" + std::to_string(g);
  }
  return out.empty() ? "0" : out;
}

TargetPtr unit_group_target(std::size_t rank, std::size_t cls, std::uint64_t p, unsigned m,
                            std::size_t max_order) {
  const std::string name = "U(rank " + std::to_string(rank) + ", class " + std::to_string(cls) +
                           ", mod " + std::to_string(p) + "^" + std::to_string(m) + ")";
  return cached(name + "/" + std::to_string(max_order), [&]() -> TargetPtr {
    const MagnusParams params{rank, cls, p, m};
    std::vector<TruncatedPoly> gens;
    for (std::uint32_t g = 0; g < rank; ++g) {
      gens.push_back(TruncatedPoly::letter_image({g, false}, rank, cls, params.modulus()));
    }
    auto g = generate_group(TruncatedPoly::one(rank, cls, params.modulus()), gens,
                            [](const TruncatedPoly& a, const TruncatedPoly& b) { return a * b; },
                            poly_label, max_order);
    return std::make_shared<Target>(Target{name, std::move(g.table), std::nullopt});
  });
}

TargetPtr named_target(const std::string& name, GeneratedGroup (*build)()) {
  return cached(name, [&]() -> TargetPtr {
    return std::make_shared<Target>(Target{name, build().table, std::nullopt});
  });
}

std::vector<TargetPtr> catalog_targets() {
  std::vector<TargetPtr> out;
  out.push_back(named_target("S3", [] { return symmetric_group(3); }));
  out.push_back(named_target("D8", [] { return dihedral_group(4); }));
  out.push_back(named_target("Q8", [] { return quaternion_group(); }));
  out.push_back(named_target("D10", [] { return dihedral_group(5); }));
  out.push_back(named_target("A4", [] { return alternating_group(4); }));
  out.push_back(named_target("Heis(3)", [] { return heisenberg_group(3); }));
  out.push_back(named_target("D12", [] { return dihedral_group(6); }));
  out.push_back(named_target("Z7:Z3", [] { return metacyclic_group(7, 3, 2); }));
  out.push_back(named_target("Z5:Z4", [] { return metacyclic_group(5, 4, 2); }));
  out.push_back(named_target("S4", [] { return symmetric_group(4); }));
  out.push_back(named_target("SL(2,3)", [] { return special_linear_2_3(); }));
  out.push_back(named_target("D16", [] { return dihedral_group(8); }));
  out.push_back(named_target("Heis(4)", [] { return heisenberg_group(4); }));
  out.push_back(named_target("Heis(5)", [] { return heisenberg_group(5); }));
  return out;
}

long long abs_ll(long long a) { return a < 0 ? -a : a; }

Element evaluate(const FiniteGroupTable& t, const std::vector<Element>& images, const Word& w) {
  Element out = 0;
  for (auto l : w) out = t.mul(out, l.inverted ? t.inv(images[l.generator]) : images[l.generator]);
  return out;
}

Element element_image(const FiniteGroupTable& t, const std::vector<Element>& images,
                      const FiberedElement& g) {
  return t.mul(evaluate(t, images, g.base_word), t.pow(images.back(), g.fiber_exponent));
}

// Checks the defining relations of G / <h^M> on (base images, eta).
bool respects_relations(const SeifertPresentation& p, const FiniteGroupTable& t,
                        const std::vector<Element>& images, long long modulus) {
  const Element eta = images.back();
  if (t.pow(eta, modulus) != 0) return false;
  for (std::uint32_t x = 0; x < p.rank(); ++x) {
    const Element c = t.conjugate(eta, images[x]);
    if (c != (p.epsilon()[x] > 0 ? eta : t.inv(eta))) return false;
  }
  if (p.has_relator() && evaluate(t, images, p.relator()) != t.pow(eta, p.euler_degree())) {
    return false;
  }
  return true;
}

std::vector<long long> stage1_moduli(const SeifertPresentation& p, const FiberedElement& g1,
                                     const FiberedElement& g2) {
  const long long n = p.fiber_modulus();
  const SeifertPresentation p0 = p.with_fiber_modulus(0);
  const long long lambda = lambda_invariants(p0, g1).lambda;

  std::vector<long long> candidates;
  if (n > 0) {
    if (lambda > 0) candidates.push_back(std::gcd(lambda, n));
    for (long long d = 1; d <= n; ++d) {
      if (n % d == 0) candidates.push_back(d);
    }
  } else {
    if (lambda > 0) candidates.push_back(lambda);
    for (long long d = 1; d <= 16; ++d) candidates.push_back(d);
  }
  std::vector<long long> out;
  for (long long m : candidates) {
    if (std::find(out.begin(), out.end(), m) != out.end()) continue;
    if (!are_conjugate(p.with_fiber_modulus(m), g1, g2)) out.push_back(m);
  }
  return out;
}

double layer_size(std::size_t rank, std::size_t k, std::size_t n) {
  double c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(rank - i) / static_cast<double>(i + 1);
  return c * std::pow(static_cast<double>(n - 1), static_cast<double>(k));
}

// Visits base-image tuples by increasing number of non-identity entries;
// layers too large for the remaining cap are sampled. visit() returns true to stop.
template <class Visit>
void enumerate_tuples(std::size_t n, std::size_t rank, std::size_t cap, std::mt19937_64& rng,
                      Visit visit) {
  std::size_t used = 0;
  std::vector<Element> tuple(rank, 0);
  for (std::size_t k = 0; k <= rank && used < cap; ++k) {
    if (k > 0 && n < 2) return;
    if (layer_size(rank, k, n) <= static_cast<double>(cap - used)) {
      std::vector<std::size_t> pos(k);
      std::iota(pos.begin(), pos.end(), 0);
      while (true) {
        std::vector<Element> vals(k, 1);
        while (true) {
          std::fill(tuple.begin(), tuple.end(), 0);
          for (std::size_t i = 0; i < k; ++i) tuple[pos[i]] = vals[i];
          ++used;
          if (visit(tuple)) return;
          std::size_t i = 0;
          while (i < k && ++vals[i] == n) vals[i++] = 1;
          if (i == k) break;
        }
        // Next combination of positions.
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == rank - k + i - 1) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
      }
    } else {
      std::vector<std::size_t> all(rank);
      std::iota(all.begin(), all.end(), 0);
      std::uniform_int_distribution<Element> value(1, static_cast<Element>(n - 1));
      while (used < cap) {
        std::shuffle(all.begin(), all.end(), rng);
        std::fill(tuple.begin(), tuple.end(), 0);
        for (std::size_t i = 0; i < k; ++i) tuple[all[i]] = value(rng);
        ++used;
        if (visit(tuple)) return;
      }
    }
  }
}

}  // namespace

WitnessResult find_witness(const SeifertPresentation& p, const FiberedElement& g1,
                           const FiberedElement& g2, const SearchBudget& budget) {
  WitnessResult result;
  if (auto c = are_conjugate(p, g1, g2)) {
    result.outcome = WitnessOutcome::conjugate;
    result.conjugator = *c;
    return result;
  }
  const auto deadline = std::chrono::steady_clock::now() + budget.time_limit;
  const std::vector<long long> moduli = stage1_moduli(p, g1, g2);
  if (moduli.empty()) return result;

  // Abelian targets: eta lives in Z/e, e dividing M, s (when there is a
  // relator) and 2 (when epsilon is nontrivial).
  std::vector<TargetPtr> targets;
  for (std::uint32_t q = 2; q <= 8; ++q) {
    std::vector<std::uint32_t> seen;
    for (long long m : moduli) {
      long long e = m;
      if (p.has_relator()) e = std::gcd(e, abs_ll(p.euler_degree()));
      if (!p.epsilon_trivial()) e = std::gcd(e, 2LL);
      const auto ue = static_cast<std::uint32_t>(e);
      if (std::find(seen.begin(), seen.end(), ue) != seen.end()) continue;
      seen.push_back(ue);
      double order = std::pow(static_cast<double>(q), static_cast<double>(p.rank())) * ue;
      if (order > static_cast<double>(budget.max_target_order)) continue;
      if (auto t = abelian_target(p.rank(), q, ue)) targets.push_back(t);
    }
  }
  const std::size_t max_order = budget.max_target_order;
  for (auto [r, c, prime, m] : std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t, unsigned>>{
           {2, 2, 2, 1}, {2, 2, 3, 1}, {2, 2, 2, 2}, {2, 3, 2, 1}, {3, 2, 2, 1}, {2, 2, 5, 1}}) {
    if (auto t = unit_group_target(r, c, prime, m, max_order)) targets.push_back(t);
  }
  for (auto& t : catalog_targets()) {
    if (t && t->table.order() <= max_order) targets.push_back(t);
  }

  std::mt19937_64 rng(budget.seed);
  // Enumerated targets share the budget evenly; canonical abelian maps cost
  // at most |target| candidates each.
  const auto enumerated = static_cast<std::size_t>(
      std::count_if(targets.begin(), targets.end(), [](const TargetPtr& t) { return !t->canonical; }));
  const std::size_t per_target = std::max<std::size_t>(1, budget.max_candidates / std::max<std::size_t>(1, enumerated));
  std::size_t& tried = result.candidates_tried;
  bool out_of_budget = false;

  for (const auto& target : targets) {
    if (out_of_budget) break;
    const FiniteGroupTable& t = target->table;
    std::optional<WitnessCertificate> found;
    const std::size_t target_start = tried;

    // Returns true to stop the enumeration.
    auto try_images = [&](std::vector<Element> images) {
      const std::size_t before = tried;
      for (Element eta = 0; eta < t.order(); ++eta) {
        images.back() = eta;
        const auto m = std::find_if(moduli.begin(), moduli.end(),
                                    [&](long long mod) { return t.pow(eta, mod) == 0; });
        if (m == moduli.end() || !respects_relations(p, t, images, *m)) continue;
        ++tried;
        const Element a = element_image(t, images, g1);
        const Element b = element_image(t, images, g2);
        if (!t.are_conjugate(a, b)) {
          found = WitnessCertificate{p, g1, g2, *m, target->name, t, images, a, b,
                                     t.conjugacy_class(a), tried};
          return true;
        }
        if (tried >= budget.max_candidates) break;
      }
      if (tried == before) ++tried;
      if (tried >= budget.max_candidates || std::chrono::steady_clock::now() > deadline) {
        out_of_budget = true;
        return true;
      }
      return !target->canonical && tried - target_start >= per_target;
    };

    if (target->canonical) {
      try_images(*target->canonical);
    } else {
      const std::size_t cap = std::min(per_target, budget.max_candidates - std::min(tried, budget.max_candidates));
      enumerate_tuples(t.order(), p.rank(), cap, rng, [&](const std::vector<Element>& base) {
        std::vector<Element> images = base;
        images.push_back(0);
        return try_images(std::move(images));
      });
    }
    if (found) {
      std::string why;
      if (!replay(*found, &why)) throw std::logic_error("find_witness: certificate failed replay: " + why);
      result.outcome = WitnessOutcome::certificate;
      result.certificate = std::move(found);
      return result;
    }
  }
  return result;
}

bool replay(const WitnessCertificate& cert, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  const SeifertPresentation& p = cert.presentation;
  const FiniteGroupTable& t = cert.target;
  const long long m = cert.stage1_modulus;
  if (cert.generator_images.size() != p.rank() + 1) return fail("wrong number of generator images");
  for (Element e : cert.generator_images) {
    if (e >= t.order()) return fail("generator image outside the target");
  }
  if (m <= 0) return fail("stage-1 modulus must be positive");
  if (p.fiber_modulus() > 0 && p.fiber_modulus() % m != 0) {
    return fail("stage-1 modulus does not divide the fiber modulus");
  }
  if (!respects_relations(p, t, cert.generator_images, m)) return fail("relations not respected");
  const Element a = element_image(t, cert.generator_images, cert.g1);
  const Element b = element_image(t, cert.generator_images, cert.g2);
  if (a != cert.image_g1 || b != cert.image_g2) return fail("recorded images do not match");
  std::vector<Element> cls;
  for (Element w = 0; w < t.order(); ++w) {
    const Element c = t.mul(t.mul(t.inv(w), a), w);
    if (c == b) return fail("images are conjugate in the target");
    cls.push_back(c);
  }
  std::sort(cls.begin(), cls.end());
  cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  if (cls != cert.class_of_image_g1) return fail("recorded conjugacy class is wrong");
  return true;
}

nlohmann::json to_json(const WitnessCertificate& cert) {
  const SeifertPresentation& p = cert.presentation;
  const Alphabet& mixed = p.mixed_alphabet();
  nlohmann::json images = nlohmann::json::object();
  for (std::uint32_t g = 0; g < mixed.rank(); ++g) images[mixed.name(g)] = cert.generator_images[g];
  nlohmann::json target = to_json(cert.target);
  target["name"] = cert.target_name;
  return {{"presentation", to_json(p)},
          {"g1", to_string(to_mixed_word(p, cert.g1), mixed)},
          {"g2", to_string(to_mixed_word(p, cert.g2), mixed)},
          {"stage1_modulus", cert.stage1_modulus},
          {"target", target},
          {"generator_images", images},
          {"image_g1", cert.image_g1},
          {"image_g2", cert.image_g2},
          {"class_of_image_g1", cert.class_of_image_g1},
          {"candidates_tried", cert.candidates_tried}};
}

WitnessCertificate certificate_from_json(const nlohmann::json& j) {
  WitnessCertificate cert;
  cert.presentation = parse_presentation(j.at("presentation"));
  const SeifertPresentation& p = cert.presentation;
  cert.g1 = parse_element(j.at("g1").get<std::string>(), p);
  cert.g2 = parse_element(j.at("g2").get<std::string>(), p);
  cert.stage1_modulus = j.at("stage1_modulus").get<long long>();
  cert.target = group_from_json(j.at("target"));
  cert.target_name = j.at("target").value("name", "");
  const auto& images = j.at("generator_images");
  const Alphabet& mixed = p.mixed_alphabet();
  for (std::uint32_t g = 0; g < mixed.rank(); ++g) {
    cert.generator_images.push_back(images.at(mixed.name(g)).get<Element>());
  }
  cert.image_g1 = j.at("image_g1").get<Element>();
  cert.image_g2 = j.at("image_g2").get<Element>();
  cert.class_of_image_g1 = j.at("class_of_image_g1").get<std::vector<Element>>();
  cert.candidates_tried = j.value("candidates_tried", std::size_t{0});
  return cert;
}

}  // namespace sfconj
