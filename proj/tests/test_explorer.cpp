#include <doctest.h>

#include <cstdlib>
#include <random>

#include "sfconj/explorer.hpp"
#include "sfconj/parse.hpp"
#include "support/util.hpp"

using namespace sfconj;

namespace {

FiberedElement E(const SeifertPresentation& p, const std::string& text) {
  return parse_element(text, p);
}

SearchBudget small_budget() {
  SearchBudget b;
  b.max_candidates = 10000;
  b.max_target_order = 256;
  return b;
}

// The homomorphism in the certificate, evaluated independently of the library.
Element image_of(const WitnessCertificate& c, const FiberedElement& g) {
  const auto& t = c.target;
  Element out = 0;
  for (auto l : to_mixed_word(c.presentation, g)) {
    const Element x = c.generator_images[l.generator];
    out = t.mul(out, l.inverted ? t.inv(x) : x);
  }
  return out;
}

void check_certificate(const WitnessCertificate& c) {
  std::string why;
  CHECK_MESSAGE(replay(c, &why), why);
  const auto& t = c.target;
  CHECK(image_of(c, c.g1) == c.image_g1);
  CHECK(image_of(c, c.g2) == c.image_g2);
  for (Element w = 0; w < t.order(); ++w) CHECK(t.mul(t.mul(t.inv(w), c.image_g1), w) != c.image_g2);
}

}  // namespace

TEST_CASE("Klein-bottle pair separated mod 2") {
  const auto p = SeifertPresentation::free(1, {-1});
  const auto r = find_witness(p, E(p, "x"), E(p, "x h"), small_budget());
  REQUIRE(r.outcome == WitnessOutcome::certificate);
  const auto& c = *r.certificate;
  CHECK(c.stage1_modulus == 2);
  CHECK(c.target.is_abelian());
  CHECK(c.image_g1 != c.image_g2);
  check_certificate(c);
}

TEST_CASE("conjugate pairs are reported as conjugate") {
  const auto p = SeifertPresentation::free(1, {-1});
  const auto r = find_witness(p, E(p, "x"), E(p, "x h^2"));
  REQUIRE(r.outcome == WitnessOutcome::conjugate);
  REQUIRE(r.conjugator);
  CHECK(equal(p, conjugate_by(p, E(p, "x"), collect(p, *r.conjugator)), E(p, "x h^2")));
  CHECK_FALSE(r.certificate);

  std::mt19937_64 rng(61);
  for (const auto& q : {SeifertPresentation::surface(2, 1), SeifertPresentation::torus(2, {1, -1}),
                        SeifertPresentation::free(2, {-1, 1}, 3)}) {
    for (int i = 0; i < 10; ++i) {
      const auto g = collect(q, testutil::random_word(q.rank() + 1, testutil::uniform(rng, 1, 6), rng));
      const auto c = collect(q, testutil::random_word(q.rank() + 1, testutil::uniform(rng, 0, 5), rng));
      const auto v = conjugate_by(q, g, c);
      const auto res = find_witness(q, g, v);
      REQUIRE(res.outcome == WitnessOutcome::conjugate);
      CHECK(equal(q, conjugate_by(q, g, collect(q, *res.conjugator)), v));
    }
  }
}

TEST_CASE("Heisenberg x versus y in a small abelian quotient") {
  const auto p = SeifertPresentation::torus(1);
  const auto r = find_witness(p, E(p, "x"), E(p, "y"), small_budget());
  REQUIRE(r.outcome == WitnessOutcome::certificate);
  CHECK(r.certificate->target.is_abelian());
  CHECK(r.certificate->target.order() == 4);
  check_certificate(*r.certificate);
}

TEST_CASE("separating fiber offsets outside the lattice") {
  struct Case {
    SeifertPresentation p;
    std::string g;
    long long n;
  };
  const std::vector<Case> cases{
      {SeifertPresentation::surface(2, 1), "a1", 1},
      {SeifertPresentation::surface(2, 1), "a1 b1", 2},
      {SeifertPresentation::surface(2, 0), "a1", 1},
      {SeifertPresentation::torus(2), "x", 1},
      {SeifertPresentation::torus(0), "x y", 3},
      {SeifertPresentation::torus(1), "", 1},
      {SeifertPresentation::free(2, {1, -1}), "y", 1},
      {SeifertPresentation::free(2), "x y", -2},
      {SeifertPresentation::free(2, {1, -1}, 6), "x", 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.g);
    CAPTURE(c.n);
    const auto g1 = E(c.p, c.g);
    const auto g2 = multiply(c.p, g1, {Word{}, c.n});
    REQUIRE_FALSE(are_conjugate(c.p, g1, g2));
    const auto r = find_witness(c.p, g1, g2, small_budget());
    REQUIRE(r.outcome == WitnessOutcome::certificate);
    check_certificate(*r.certificate);
    CHECK(r.candidates_tried <= 10000);
  }
}

TEST_CASE("base-level separations") {
  const auto p = SeifertPresentation::free(2);
  const auto r = find_witness(p, E(p, "x x y y"), E(p, "x y x y"), small_budget());
  REQUIRE(r.outcome == WitnessOutcome::certificate);
  CHECK_FALSE(r.certificate->target.is_abelian());
  check_certificate(*r.certificate);

  const auto s = SeifertPresentation::surface(2, 1);
  const auto rs = find_witness(s, E(s, "a1 b1"), E(s, "b1 a1"), small_budget());
  // a1 b1 and b1 a1 are conjugate.
  CHECK(rs.outcome == WitnessOutcome::conjugate);
  const auto rt = find_witness(s, E(s, "a1 a2"), E(s, "a2 a1 h"), small_budget());
  REQUIRE(rt.outcome == WitnessOutcome::certificate);
  check_certificate(*rt.certificate);
}

TEST_CASE("certificate json round trip and tampering") {
  const auto p = SeifertPresentation::surface(2, 1);
  const auto r = find_witness(p, E(p, "a1"), E(p, "a1 h"), small_budget());
  REQUIRE(r.certificate);
  const auto j = to_json(*r.certificate);
  CHECK(j.contains("presentation"));
  CHECK(j["g1"] == "a1");
  CHECK(j["g2"] == "a1 h");
  CHECK(j["generator_images"].size() == 5);
  CHECK(j["target"].contains("table"));

  const auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
  CHECK(replay(back));
  CHECK(to_json(back) == j);

  auto bad = back;
  bad.image_g2 = bad.image_g1;
  CHECK_FALSE(replay(bad));

  bad = back;
  bad.class_of_image_g1.pop_back();
  CHECK_FALSE(replay(bad));

  bad = back;
  bad.g2 = bad.g1;
  std::string why;
  CHECK_FALSE(replay(bad, &why));
  CHECK_FALSE(why.empty());

  bad = back;
  bad.stage1_modulus = 0;
  CHECK_FALSE(replay(bad));

  // Changing a generator image breaks either the relations or the recorded images.
  int rejected = 0;
  for (Element e = 0; e < back.target.order(); ++e) {
    bad = back;
    if (bad.generator_images[0] == e) continue;
    bad.generator_images[0] = e;
    rejected += replay(bad) ? 0 : 1;
  }
  CHECK(rejected == static_cast<int>(back.target.order()) - 1);
}

TEST_CASE("runs are deterministic") {
  const auto p = SeifertPresentation::surface(2, 3);
  const auto g1 = E(p, "a1 b2");
  const auto g2 = E(p, "a1 b2 h");
  const auto a = find_witness(p, g1, g2, small_budget());
  const auto b = find_witness(p, g1, g2, small_budget());
  REQUIRE(a.certificate);
  REQUIRE(b.certificate);
  CHECK(to_json(*a.certificate) == to_json(*b.certificate));
  CHECK(a.candidates_tried == b.candidates_tried);
}

TEST_CASE("budget exhaustion is reported") {
  const auto p = SeifertPresentation::surface(2, 1);
  SearchBudget tiny;
  tiny.max_candidates = 1;
  tiny.max_target_order = 2;
  const auto r = find_witness(p, E(p, "a1 b1 a2"), E(p, "a1 b1 a2 h"), tiny);
  CHECK(r.outcome == WitnessOutcome::budget_exhausted);
  CHECK_FALSE(r.certificate);
  CHECK(std::string(to_string(r.outcome)) == "budget_exhausted");
}

TEST_CASE("budget from the environment") {
  ::setenv("SFCONJ_MAX_CANDIDATES", "123", 1);
  CHECK(SearchBudget::from_env().max_candidates == 123);
  ::setenv("SFCONJ_MAX_CANDIDATES", "junk", 1);
  CHECK(SearchBudget::from_env().max_candidates == SearchBudget{}.max_candidates);
  ::unsetenv("SFCONJ_MAX_CANDIDATES");
  CHECK(SearchBudget::from_env().max_candidates == SearchBudget{}.max_candidates);
}
