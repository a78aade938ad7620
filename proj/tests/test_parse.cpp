#include <doctest.h>

#include "sfconj/parse.hpp"

using namespace sfconj;

namespace {

const SeifertPresentation& genus2() {
  static const SeifertPresentation p = SeifertPresentation::surface(2, 1);
  return p;
}

}  // namespace

TEST_CASE("word grammar") {
  const Alphabet& m = genus2().mixed_alphabet();
  const Word w = parse_word("a1 B1 h^-2", m);
  CHECK(w == Word{{0, false}, {1, true}, {4, true}, {4, true}});
  CHECK(parse_word("a1^0", m).empty());
  CHECK(parse_word("", m).empty());
  CHECK(parse_word("  \n\t ", m).empty());
  CHECK(parse_word("a1^3", m).size() == 3);
  CHECK(parse_word("a1^+2", m) == Word{{0, false}, {0, false}});
  CHECK(parse_word("A1^-2", m) == Word{{0, false}, {0, false}});
  CHECK(parse_word("a1^-1", m) == parse_word("A1", m));
  CHECK(parse_word("H", m) == Word{{4, true}});
  // Words are not reduced by the parser.
  CHECK(parse_word("a1 A1", m).size() == 2);
}

TEST_CASE("parse errors carry position and token") {
  const Alphabet& m = genus2().mixed_alphabet();
  try {
    parse_word("a1 zz", m);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.token() == "zz");
    CHECK(e.line() == 1);
    CHECK(e.column() == 4);
    CHECK(std::string(e.what()).find("zz") != std::string::npos);
  }
  try {
    parse_word("a1\n  b1^x", m);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.token() == "b1^x");
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_word("^2", m), ParseError);
  CHECK_THROWS_AS(parse_word("a1^", m), ParseError);
  CHECK_THROWS_AS(parse_word("a1^2^3", m), ParseError);
  CHECK_THROWS_AS(parse_word("a1^99999999", m), ParseError);
  CHECK_THROWS_AS(parse_word("a1^1.5", m), ParseError);
  CHECK_THROWS_AS(parse_word("a3", m), ParseError);
  CHECK_THROWS_AS(parse_word("Aa1", m), ParseError);
}

TEST_CASE("parse_element collects") {
  const auto el = parse_element("h a1 h b1", genus2());
  CHECK(el.base_word == Word{{0, false}, {1, false}});
  CHECK(el.fiber_exponent == 2);
  const auto klein = SeifertPresentation::free(1, {-1});
  CHECK(parse_element("h x", klein).fiber_exponent == -1);
}

TEST_CASE("presentation json") {
  const auto p = parse_presentation(R"({"base": {"kind": "surface", "genus": 2},
                                        "euler_degree": 1, "epsilon": {"a1": 1}, "fiber_modulus": 0})");
  CHECK(p.kind() == BaseKind::surface);
  CHECK(p.genus() == 2);
  CHECK(p.euler_degree() == 1);
  CHECK(p.epsilon_trivial());

  const auto k = parse_presentation(R"({"base": {"kind": "free", "rank": 1}, "epsilon": {"x": -1}})");
  CHECK(k.kind() == BaseKind::free);
  CHECK(k.epsilon() == std::vector<int>{-1});

  const auto t = parse_presentation(R"({"base": {"kind": "torus"}, "euler_degree": 2, "fiber_modulus": 6})");
  CHECK(t.kind() == BaseKind::torus);
  CHECK(t.fiber_modulus() == 6);

  const auto named = parse_presentation(R"({"base": {"kind": "free", "rank": 2, "names": ["u", "v"]},
                                            "epsilon": {"v": -1}})");
  CHECK(named.base_alphabet().name(1) == "v");
  CHECK(named.epsilon() == std::vector<int>{1, -1});

  for (const auto& q : std::vector<SeifertPresentation>{p, k, t, named}) {
    const auto back = parse_presentation(to_json(q));
    CHECK(back.kind() == q.kind());
    CHECK(back.genus() == q.genus());
    CHECK(back.euler_degree() == q.euler_degree());
    CHECK(back.epsilon() == q.epsilon());
    CHECK(back.fiber_modulus() == q.fiber_modulus());
    CHECK(back.base_alphabet() == q.base_alphabet());
  }
}

TEST_CASE("presentation json errors") {
  const char* bad[] = {
      R"({})",
      R"({"base": 3})",
      R"({"base": {"kind": "sphere"}})",
      R"({"base": {"kind": "surface", "genus": 1}})",
      R"({"base": {"kind": "surface", "genus": 33}})",
      R"({"base": {"kind": "surface"}})",
      R"({"base": {"kind": "free", "rank": 0}})",
      R"({"base": {"kind": "free", "rank": 2}, "euler_degree": 1})",
      R"({"base": {"kind": "free", "rank": 1}, "epsilon": {"y": -1}})",
      R"({"base": {"kind": "free", "rank": 1}, "epsilon": {"x": 2}})",
      R"({"base": {"kind": "free", "rank": 1}, "epsilon": [1]})",
      R"({"base": {"kind": "free", "rank": 1}, "fiber_modulus": -2})",
      R"({"base": {"kind": "free", "rank": 1}, "fiber_modulus": "2"})",
      R"({"base": {"kind": "free", "rank": 2, "names": ["x", "h"]}})",
      R"({"base": {"kind": "torus", "names": ["u", "v"]}})",
      R"({"base": {"kind": "surface", "genus": 2}, "cone_points": [2]})",
      R"({"base": {"kind": "surface", "genus": 2)",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS(parse_presentation(std::string_view(text)));
  }
  CHECK_NOTHROW(parse_presentation(R"({"base": {"kind": "surface", "genus": 2}, "cone_points": []})"));
}
