#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sfconj/extensions.hpp"
#include "support/util.hpp"

using namespace sfconj;
using testutil::W;

namespace {

// Conjugacy class by direct enumeration, without the precomputed class ids.
std::vector<Element> brute_class(const FiniteGroupTable& g, Element a) {
  std::set<Element> out;
  for (Element w = 0; w < g.order(); ++w) out.insert(g.mul(g.mul(g.inv(w), a), w));
  return {out.begin(), out.end()};
}

std::size_t brute_class_count(const FiniteGroupTable& g) {
  std::set<std::vector<Element>> classes;
  for (Element a = 0; a < g.order(); ++a) classes.insert(brute_class(g, a));
  return classes.size();
}

}  // namespace

TEST_CASE("finite group families") {
  struct Expect {
    const char* name;
    GeneratedGroup group;
    std::size_t order;
    std::size_t classes;
  };
  const std::vector<Expect> cases{
      {"Z6", cyclic_group(6), 6, 6},
      {"S3", symmetric_group(3), 6, 3},
      {"D8", dihedral_group(4), 8, 5},
      {"Q8", quaternion_group(), 8, 5},
      {"D10", dihedral_group(5), 10, 4},
      {"A4", alternating_group(4), 12, 4},
      {"D12", dihedral_group(6), 12, 6},
      {"Z5:Z4", metacyclic_group(5, 4, 2), 20, 5},
      {"Z7:Z3", metacyclic_group(7, 3, 2), 21, 5},
      {"S4", symmetric_group(4), 24, 5},
      {"SL(2,3)", special_linear_2_3(), 24, 7},
      {"Heis(3)", heisenberg_group(3), 27, 11},
      {"D16", dihedral_group(8), 16, 7},
      {"A5", alternating_group(5), 60, 5},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto& g = c.group.table;
    CHECK(g.order() == c.order);
    CHECK(g.conjugacy_classes().size() == c.classes);
    CHECK(brute_class_count(g) == c.classes);
    CHECK(g.subgroup(c.group.generators).size() == c.order);
    for (Element a = 0; a < g.order(); ++a) CHECK(g.conjugacy_class(a) == brute_class(g, a));
  }
  CHECK(cyclic_group(6).table.is_abelian());
  CHECK_FALSE(quaternion_group().table.is_abelian());
  CHECK(symmetric_group(3).table.label(0) == "e");
}

TEST_CASE("table validation") {
  CHECK_THROWS(FiniteGroupTable({{0, 1}, {1, 1}}));
  CHECK_THROWS(FiniteGroupTable({{1, 0}, {0, 1}}));
  // A Latin square with identity 0 that is not associative (order 5).
  const std::vector<std::vector<Element>> latin{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS(FiniteGroupTable(latin));
  CHECK_NOTHROW(FiniteGroupTable());
}

TEST_CASE("group json round trip") {
  const auto g = special_linear_2_3().table;
  const auto back = group_from_json(to_json(g));
  CHECK(back.table() == g.table());
  CHECK(back.labels() == g.labels());
  auto j = to_json(g);
  j["table"][1][1] = 0;
  j["table"][1][2] = 0;
  CHECK_THROWS(group_from_json(j));
}

TEST_CASE("direct product and subgroups") {
  const auto p = direct_product(symmetric_group(3).table, cyclic_group(2).table);
  CHECK(p.order() == 12);
  CHECK(brute_class_count(p) == 6);
  const auto s4 = symmetric_group(4).table;
  CHECK(s4.is_subgroup(s4.subgroup({1})));
  CHECK_FALSE(s4.is_subgroup({0, 1, 2}));
  const auto s3 = symmetric_group(3);
  CHECK_FALSE(s3.table.is_normal(s3.table.subgroup({s3.generators[0]})));
  CHECK(s3.table.is_normal(s3.table.subgroup({s3.generators[1]})));
  const auto induced = induced_table(s4, s4.subgroup({s4.mul(1, 1)}));
  CHECK(induced.order() == s4.subgroup({s4.mul(1, 1)}).size());
}

TEST_CASE("automorphisms") {
  const auto z4 = cyclic_group(4).table;
  const FiniteAutomorphism inversion(z4, {0, 3, 2, 1});
  CHECK_THROWS(FiniteAutomorphism(z4, {0, 2, 1, 3}));
  CHECK_THROWS(FiniteAutomorphism(z4, {0, 1, 1, 3}));
  CHECK(inversion.power(2) == FiniteAutomorphism::identity(z4));
  const auto vi = virtually_inner(z4, inversion);
  CHECK(vi.period == 2);
  CHECK(vi.witness == 0);

  const auto s3 = symmetric_group(3).table;
  const auto inner = FiniteAutomorphism::conjugation(s3, 1);
  CHECK(virtually_inner(s3, inner).period == 1);
  CHECK(inner_witness(s3, inner));

  // Multiplication by 2 on Z/7 has order 3 and is never inner.
  std::vector<Element> times2(7);
  for (Element a = 0; a < 7; ++a) times2[a] = (2 * a) % 7;
  const FiniteAutomorphism m2(cyclic_group(7).table, times2);
  CHECK(virtually_inner(cyclic_group(7).table, m2).period == 3);
}

TEST_CASE("twisted classes") {
  const auto z4 = cyclic_group(4).table;
  const FiniteAutomorphism inversion(z4, {0, 3, 2, 1});
  CHECK(twisted_classes_finite(z4, inversion) == std::vector<std::vector<Element>>{{0, 2}, {1, 3}});

  for (const auto& gg : {symmetric_group(3), dihedral_group(4), quaternion_group(), alternating_group(4)}) {
    const auto& g = gg.table;
    CHECK(twisted_classes_finite(g, FiniteAutomorphism::identity(g)) == g.conjugacy_classes());
    for (Element w = 0; w < g.order(); ++w) {
      const auto phi = FiniteAutomorphism::conjugation(g, w);
      const auto classes = twisted_classes_finite(g, phi);
      std::vector<int> hits(g.order(), 0);
      for (const auto& c : classes) {
        for (Element e : c) ++hits[e];
      }
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
      const auto& one = classes.front();
      for (Element h = 0; h < g.order(); ++h) {
        CHECK(std::binary_search(one.begin(), one.end(), g.mul(g.inv(phi(h)), h)));
      }
    }
  }
}

TEST_CASE("catalog shape") {
  const auto cat = extension_catalog();
  CHECK(cat.size() >= 10);
  std::set<std::string> names;
  for (const auto& e : cat) {
    names.insert(e.name);
    CHECK(e.group.order() <= 64);
    CHECK(e.group.is_normal(e.subgroup));
    std::vector<Element> gens = e.subgroup;
    gens.push_back(e.t);
    CHECK(e.group.subgroup(gens).size() == e.group.order());
  }
  CHECK(names.count("S3 > A3"));
  CHECK(names.count("D8 > Z4"));
  CHECK(names.count("S3 x Z2 > S3"));
}

TEST_CASE("twisted class identity on the catalog") {
  for (const auto& e : extension_catalog()) {
    CAPTURE(e.name);
    const auto report = verify_prop_twisted(e.group, e.subgroup, e.t);
    CHECK(report.ok.size() == e.subgroup.size());
    CHECK(report.all());
    // Independent recomputation: G-class of t g against t {t^-1 h^-1 t g h}.
    for (Element g : e.subgroup) {
      std::set<Element> rhs;
      for (Element h : e.subgroup) {
        const Element phi_h = e.group.conjugate(h, e.t);
        rhs.insert(e.group.mul(e.t, e.group.mul(e.group.mul(e.group.inv(phi_h), g), h)));
      }
      CHECK(brute_class(e.group, e.group.mul(e.t, g)) == std::vector<Element>(rhs.begin(), rhs.end()));
    }
  }
}

TEST_CASE("conjugacy decomposition on the catalog") {
  for (const auto& e : extension_catalog()) {
    CAPTURE(e.name);
    for (Element g = 0; g < e.group.order(); ++g) {
      const auto d = conjugacy_decomposition(e.group, e.subgroup, g);
      CHECK(d.holds);
      CHECK(d.coset_representatives.size() * e.subgroup.size() == e.group.order());
      std::set<Element> united;
      for (const auto& piece : d.pieces) united.insert(piece.begin(), piece.end());
      CHECK(std::vector<Element>(united.begin(), united.end()) == brute_class(e.group, g));
    }
  }
}

TEST_CASE("decomposition examples and errors") {
  const auto s3 = symmetric_group(3);
  const auto& g = s3.table;
  const auto a3 = g.subgroup({s3.generators[1]});
  const auto d = conjugacy_decomposition(g, a3, s3.generators[0]);
  CHECK(d.holds);
  CHECK(d.conjugacy_class.size() == 3);
  // G == S: a single coset and the ordinary class.
  std::vector<Element> all(g.order());
  for (Element a = 0; a < g.order(); ++a) all[a] = a;
  const auto whole = conjugacy_decomposition(g, all, s3.generators[0]);
  CHECK(whole.coset_representatives.size() == 1);
  CHECK(whole.pieces.front() == whole.conjugacy_class);

  const auto non_normal = g.subgroup({s3.generators[0]});
  CHECK_THROWS_AS(conjugacy_decomposition(g, non_normal, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_prop_twisted(g, non_normal, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_prop_twisted(g, a3, 0), std::invalid_argument);

  const auto trivial = verify_prop_twisted(cyclic_group(2).table, {0}, 1);
  CHECK(trivial.ok.size() == 1);
  CHECK(trivial.all());
}

TEST_CASE("catalog json round trip") {
  for (const auto& e : extension_catalog()) {
    const auto back = catalog_entry_from_json(to_json(e));
    CHECK(back.name == e.name);
    CHECK(back.subgroup == e.subgroup);
    CHECK(back.t == e.t);
    CHECK(back.group.table() == e.group.table());
  }
  auto j = to_json(extension_catalog()[1]);
  std::swap(j["automorphism"][1], j["automorphism"][2]);
  CHECK_THROWS(catalog_entry_from_json(j));
}

TEST_CASE("presentation automorphisms") {
  const auto f2 = Carrier::free(2);
  const Alphabet& a = f2.alphabet();
  const PresentationAutomorphism swap(f2, {W(a, "y"), W(a, "x")}, 2, Word{});
  CHECK(swap.apply(W(a, "x y Y y")) == W(a, "y x"));
  CHECK_THROWS(PresentationAutomorphism(f2, {W(a, "y"), W(a, "x")}, 1, Word{}));
  CHECK_THROWS(PresentationAutomorphism(f2, {W(a, "y")}, 1, Word{}));
  CHECK_THROWS(PresentationAutomorphism(f2, {W(a, "y"), W(a, "x")}, 0, Word{}));

  const auto per = find_virtual_period(f2, {W(a, "y"), W(a, "x")}, 4, 2);
  REQUIRE(per);
  CHECK(per->first == 2);
  CHECK(per->second.empty());

  const auto s = Carrier::surface(2);
  const Alphabet& sa = s.alphabet();
  // Conjugation by a1, written as an automorphism of period 1.
  std::vector<Word> conj;
  for (std::uint32_t g = 0; g < 4; ++g) conj.push_back(free_reduce(W(sa, "A1") * Word::generator(g) * W(sa, "a1")));
  CHECK_NOTHROW(PresentationAutomorphism(s, conj, 1, W(sa, "a1")));
  const auto sp = find_virtual_period(s, conj, 2, 1);
  REQUIRE(sp);
  CHECK(sp->first == 1);
  CHECK(s.equal(sp->second, W(sa, "a1")));
  // a1 -> b1 does not preserve the relator.
  CHECK_THROWS(PresentationAutomorphism(s, {W(sa, "b1"), W(sa, "b1"), W(sa, "a2"), W(sa, "b2")}, 1, Word{}));
  // x -> x^2 is not virtually inner within any bound tried.
  CHECK_FALSE(find_virtual_period(f2, {W(a, "x x"), W(a, "y")}, 3, 2));
}

TEST_CASE("star_extension") {
  const auto f2 = Carrier::free(2);
  const Alphabet& a = f2.alphabet();

  const auto id = star_extension(PresentationAutomorphism(f2, {W(a, "x"), W(a, "y")}, 1, Word{}));
  CHECK(to_string(id) == "< x, y, t | t, T x t X, T y t Y >");

  const auto inner = star_extension(
      PresentationAutomorphism(f2, {W(a, "X x x"), W(a, "X y x")}, 1, W(a, "x")));
  CHECK(to_string(inner) == "< x, y, t | t X, T x t X, T y t X Y x >");

  const auto swap = star_extension(PresentationAutomorphism(f2, {W(a, "y"), W(a, "x")}, 2, Word{}));
  CHECK(to_string(swap) == "< x, y, t | t t, T x t Y, T y t X >");

  const auto named = Carrier::free(2, {"t", "u"});
  const auto renamed = star_extension(PresentationAutomorphism(named, {W(named.alphabet(), "t"), W(named.alphabet(), "u")}, 1, Word{}));
  CHECK(renamed.alphabet.name(2) == "t1");

  const auto s = Carrier::surface(2);
  std::vector<Word> ids;
  for (std::uint32_t g = 0; g < 4; ++g) ids.push_back(Word::generator(g));
  const auto surf = star_extension(PresentationAutomorphism(s, ids, 1, Word{}));
  CHECK(surf.relators.size() == 6);
  CHECK(surf.relators.front() == s.surface().relator());
}

TEST_CASE("twisted_search") {
  const auto f2 = Carrier::free(2);
  const Alphabet& a = f2.alphabet();
  const PresentationAutomorphism swap(f2, {W(a, "y"), W(a, "x")}, 2, Word{});
  const auto h = twisted_search(swap, W(a, "x"), W(a, "y"), 4);
  REQUIRE(h);
  // Shortlex order meets X before y; both satisfy the equation.
  CHECK(*h == W(a, "X"));
  CHECK(f2.equal(swap.apply(*h).inverse() * W(a, "x") * *h, W(a, "y")));

  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    const Word g1 = free_reduce(testutil::random_word(2, testutil::uniform(rng, 0, 5), rng));
    const Word hh = free_reduce(testutil::random_word(2, testutil::uniform(rng, 0, 3), rng));
    const Word g2 = free_reduce(swap.apply(hh).inverse() * g1 * hh);
    const auto found = twisted_search(swap, g1, g2, 3);
    REQUIRE(found);
    CHECK(f2.equal(swap.apply(*found).inverse() * g1 * *found, g2));
  }

  // The identity automorphism reduces to ordinary conjugacy.
  const PresentationAutomorphism id(f2, {W(a, "x"), W(a, "y")}, 1, Word{});
  const auto words = reduced_words_up_to(2, 3);
  for (const auto& u : words) {
    for (const auto& v : words) {
      const auto fc = free_conjugate(u, v);
      const auto ts = twisted_search(id, u, v, 6);
      CHECK(fc.has_value() == ts.has_value());
      if (ts) CHECK(f2.equal(ts->inverse() * u * *ts, v));
    }
  }

  // Surface carrier with an inner automorphism.
  const auto s = Carrier::surface(2);
  const Alphabet& sa = s.alphabet();
  std::vector<Word> conj;
  for (std::uint32_t g = 0; g < 4; ++g) conj.push_back(free_reduce(W(sa, "B1") * Word::generator(g) * W(sa, "b1")));
  const PresentationAutomorphism phi(s, conj, 1, W(sa, "b1"));
  for (int i = 0; i < 20; ++i) {
    const Word g1 = free_reduce(testutil::random_word(4, testutil::uniform(rng, 0, 4), rng));
    const Word hh = free_reduce(testutil::random_word(4, testutil::uniform(rng, 0, 2), rng));
    const Word g2 = free_reduce(phi.apply(hh).inverse() * g1 * hh);
    const auto found = twisted_search(phi, g1, g2, 2);
    REQUIRE(found);
    CHECK(s.equal(phi.apply(*found).inverse() * g1 * *found, g2));
  }
}

TEST_CASE("reduced_words_up_to") {
  const auto w = reduced_words_up_to(2, 4);
  CHECK(w.size() == 1 + 4 + 12 + 36 + 108);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1].size() <= w[i].size());
  CHECK(std::set<Word>(w.begin(), w.end()).size() == w.size());
}
