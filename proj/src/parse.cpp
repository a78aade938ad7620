#include "sfconj/parse.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace sfconj {

ParseError::ParseError(std::size_t line, std::size_t column, std::string token,
                       const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         " '" + token + "'"),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

bool all_upper_letters(std::string_view s) {
  bool any = false;
  for (unsigned char c : s) {
    if (std::islower(c)) return false;
    if (std::isupper(c)) any = true;
  }
  return any;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void append_token(std::vector<Letter>& out, std::string_view token, std::size_t line,
                  std::size_t column, const Alphabet& alphabet) {
  auto fail = [&](const std::string& msg) { throw ParseError(line, column, std::string(token), msg); };
  std::string_view name = token;
  long long exponent = 1;
  if (auto caret = token.find('^'); caret != std::string_view::npos) {
    name = token.substr(0, caret);
    std::string_view digits = token.substr(caret + 1);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    const char* first = digits.data();
    const char* last = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (digits.empty() || ec != std::errc() || ptr != last) fail("malformed exponent in");
    if (exponent > 1'000'000 || exponent < -1'000'000) fail("exponent too large in");
  }
  if (name.empty()) fail("missing generator name in");

  std::optional<std::uint32_t> g = alphabet.find(name);
  if (!g && all_upper_letters(name)) {
    g = alphabet.find(lowered(name));
    if (g) exponent = -exponent;
  }
  if (!g) fail("unknown generator");
  const Letter l{*g, exponent < 0};
  for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) out.push_back(l);
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    append_token(out, text.substr(i, j - i), line, column, alphabet);
    column += j - i;
    i = j;
  }
  return Word(std::move(out));
}

FiberedElement parse_element(std::string_view text, const SeifertPresentation& p) {
  return collect(p, parse_word(text, p.mixed_alphabet()));
}

namespace {

long long get_int(const nlohmann::json& j, const char* key, long long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("presentation: '") + key + "' must be an integer");
  }
  return j.at(key).get<long long>();
}

}  // namespace

SeifertPresentation parse_presentation(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("base") || !j.at("base").is_object()) {
    throw std::invalid_argument("presentation: missing 'base' object");
  }
  for (const char* key : {"cone_points", "exceptional_fibers"}) {
    if (j.contains(key) && !j.at(key).empty()) {
      throw std::invalid_argument("presentation: cone points are not supported");
    }
  }
  const auto& base = j.at("base");
  const std::string kind = base.value("kind", "");
  const long long s = get_int(j, "euler_degree", 0);
  const long long n = get_int(j, "fiber_modulus", 0);

  std::vector<std::string> names;
  if (base.contains("names")) names = base.at("names").get<std::vector<std::string>>();

  auto build = [&](std::vector<int> eps) {
    if (kind == "surface") {
      const long long genus = get_int(base, "genus", -1);
      if (genus < 2 || genus > 32) throw std::invalid_argument("presentation: genus must be in [2, 32]");
      return SeifertPresentation::surface(static_cast<int>(genus), s, std::move(eps), n);
    }
    if (kind == "torus") return SeifertPresentation::torus(s, std::move(eps), n);
    if (kind == "free") {
      if (s != 0) throw std::invalid_argument("presentation: free bases carry no Euler degree");
      const long long rank = get_int(base, "rank", -1);
      if (rank < 1 || rank > 64) throw std::invalid_argument("presentation: rank must be in [1, 64]");
      return SeifertPresentation::free(static_cast<int>(rank), std::move(eps), n, names);
    }
    throw std::invalid_argument("presentation: unknown base kind '" + kind + "'");
  };
  if (!names.empty() && kind != "free") {
    throw std::invalid_argument("presentation: custom names are only supported for free bases");
  }

  // Build once with trivial epsilon to learn the alphabet, then apply the map.
  SeifertPresentation plain = build({});
  if (!j.contains("epsilon")) return plain;
  const auto& eps_json = j.at("epsilon");
  if (!eps_json.is_object()) throw std::invalid_argument("presentation: 'epsilon' must be an object");
  std::vector<int> eps(plain.rank(), 1);
  for (const auto& [name, value] : eps_json.items()) {
    const auto g = plain.base_alphabet().find(name);
    if (!g) throw std::invalid_argument("presentation: epsilon names unknown generator '" + name + "'");
    if (!value.is_number_integer() || (value.get<int>() != 1 && value.get<int>() != -1)) {
      throw std::invalid_argument("presentation: epsilon values must be +1 or -1");
    }
    eps[*g] = value.get<int>();
  }
  return build(std::move(eps));
}

SeifertPresentation parse_presentation(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("presentation: ") + e.what());
  }
  return parse_presentation(j);
}

nlohmann::json to_json(const SeifertPresentation& p) {
  nlohmann::json base = {{"kind", to_string(p.kind())}};
  if (p.kind() == BaseKind::surface) base["genus"] = p.genus();
  if (p.kind() == BaseKind::free) {
    base["rank"] = p.rank();
    base["names"] = p.base_alphabet().names();
  }
  nlohmann::json eps = nlohmann::json::object();
  for (std::uint32_t g = 0; g < p.rank(); ++g) eps[p.base_alphabet().name(g)] = p.epsilon()[g];
  return {{"base", base},
          {"euler_degree", p.euler_degree()},
          {"epsilon", eps},
          {"fiber_modulus", p.fiber_modulus()}};
}

}  // namespace sfconj
