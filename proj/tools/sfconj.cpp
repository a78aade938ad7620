// Command-line front end. Exit codes: 0 decided/verified, 1 negative
// decision, 2 budget exhausted, 3 input error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sfconj/explorer.hpp"
#include "sfconj/extensions.hpp"
#include "sfconj/nilpotent.hpp"
#include "sfconj/parse.hpp"
#include "sfconj/seifert.hpp"

using namespace sfconj;
using nlohmann::json;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kExhausted = 2;
constexpr int kInputError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SeifertPresentation load_group(const std::string& path) {
  if (path.empty()) throw InputError("--group is required");
  return parse_presentation(read_file(path));
}

std::string show(const SeifertPresentation& p, const FiberedElement& g) {
  const std::string s = to_string(to_mixed_word(p, g), p.mixed_alphabet());
  return s.empty() ? "1" : s;
}

std::string show(const SeifertPresentation& p, const Word& mixed) {
  const std::string s = to_string(mixed, p.mixed_alphabet());
  return s.empty() ? "1" : s;
}

json lambda_json(const LambdaPair& lp) {
  json j = {{"lambda", lp.lambda}};
  j["lambda0"] = lp.lambda0 ? json(*lp.lambda0) : json(nullptr);
  return j;
}

std::string lambda_text(const LambdaPair& lp) {
  std::string s = "lambda=" + std::to_string(lp.lambda);
  s += lp.lambda0 ? " lambda0=" + std::to_string(*lp.lambda0) : " lambda0=none";
  return s;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugacy in Seifert fibered 3-manifold groups"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string group_path;
  app.add_flag("--json", as_json, "Emit JSON instead of text");

  auto with_group = [&](CLI::App* sub) {
    sub->add_option("--group", group_path, "Presentation JSON file")->required();
  };

  std::string w1, w2;

  auto* normalize = app.add_subcommand("normalize", "Collect a mixed word into normal form");
  with_group(normalize);
  normalize->add_option("word", w1)->required();

  auto* equal_cmd = app.add_subcommand("equal", "Decide whether two elements are equal");
  with_group(equal_cmd);
  equal_cmd->add_option("g1", w1)->required();
  equal_cmd->add_option("g2", w2)->required();

  auto* conj = app.add_subcommand("conj", "Decide conjugacy and print a conjugator");
  with_group(conj);
  conj->add_option("g1", w1)->required();
  conj->add_option("g2", w2)->required();

  auto* lambda = app.add_subcommand("lambda", "Fiber offsets preserving the conjugacy class");
  with_group(lambda);
  lambda->add_option("word", w1)->required();

  std::size_t rank = 2;
  std::uint64_t prime = 2;
  unsigned k = 1;
  std::size_t class_limit = kDefaultClassLimit;
  auto* order = app.add_subcommand("order-witness", "Central element of order p^k in a finite p-group");
  order->add_option("word", w1)->required();
  order->add_option("--rank", rank, "Free rank (generators x, y, z or x1..xr)")->check(CLI::Range(1, 64));
  order->add_option("--prime", prime)->check(CLI::Range(2, 1000000));
  order->add_option("-k", k)->check(CLI::Range(1, 64));
  order->add_option("--class-limit", class_limit)->check(CLI::Range(1, 32));

  std::size_t samples = 500;
  std::uint64_t seed = 1;
  auto* split = app.add_subcommand("split", "Finite quotient meeting the fiber trivially");
  with_group(split);
  split->add_option("--samples", samples);
  split->add_option("--seed", seed);

  std::string catalog_path;
  auto* verify = app.add_subcommand("verify-finite", "Check the twisted-class identities on finite extensions");
  verify->add_option("--catalog", catalog_path, "JSON array of extensions (default: built-in catalog)");

  SearchBudget budget = SearchBudget::from_env();
  std::size_t time_limit_ms = static_cast<std::size_t>(budget.time_limit.count());
  auto* witness = app.add_subcommand("witness", "Search for a finite quotient separating two classes");
  with_group(witness);
  witness->add_option("g1", w1)->required();
  witness->add_option("g2", w2)->required();
  witness->add_option("--max-candidates", budget.max_candidates)->check(CLI::PositiveNumber);
  witness->add_option("--max-order", budget.max_target_order)->check(CLI::PositiveNumber);
  witness->add_option("--time-limit-ms", time_limit_ms)->check(CLI::PositiveNumber);
  witness->add_option("--seed", budget.seed);

  std::string cert_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-verify a witness certificate");
  replay_cmd->add_option("certificate", cert_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (normalize->parsed()) {
      const auto p = load_group(group_path);
      const auto g = parse_element(w1, p);
      emit(as_json, {{"base", to_string(g.base_word, p.base_alphabet())}, {"fiber", g.fiber_exponent},
                     {"word", show(p, g)}},
           show(p, g));
      return kPositive;
    }

    if (equal_cmd->parsed()) {
      const auto p = load_group(group_path);
      const bool eq = equal(p, parse_element(w1, p), parse_element(w2, p));
      emit(as_json, {{"equal", eq}}, eq ? "equal" : "not equal");
      return eq ? kPositive : kNegative;
    }

    if (conj->parsed()) {
      const auto p = load_group(group_path);
      const auto c = are_conjugate(p, parse_element(w1, p), parse_element(w2, p));
      json j = {{"conjugate", c.has_value()}};
      if (c) j["conjugator"] = show(p, *c);
      emit(as_json, j, c ? "conjugate, conjugator: " + show(p, *c) : "not conjugate");
      return c ? kPositive : kNegative;
    }

    if (lambda->parsed()) {
      const auto p = load_group(group_path);
      if (p.fiber_modulus() != 0) throw InputError("lambda requires fiber_modulus 0");
      const auto lp = lambda_invariants(p, parse_element(w1, p));
      emit(as_json, lambda_json(lp), lambda_text(lp));
      return kPositive;
    }

    if (order->parsed()) {
      const auto p = SeifertPresentation::free(static_cast<int>(rank));
      const Word w = parse_word(w1, p.base_alphabet());
      const auto ow = order_witness(w, rank, prime, k, class_limit);
      std::ostringstream text;
      text << "class " << ow.params.cls << ", coefficients mod " << ow.params.prime << "^"
           << ow.params.exponent << ", valuation " << ow.valuation << ", order "
           << ow.verified_order << " (verified), central: "
           << (ow.centrality_checked ? "yes" : "no");
      emit(as_json, to_json(ow), text.str());
      return kPositive;
    }

    if (split->parsed()) {
      const auto p = load_group(group_path);
      const auto cert = central_split(p);
      const auto v = validate_central_split(cert, samples, seed);
      json j = to_json(cert);
      j["validation"] = {{"samples", v.accepted}, {"attempts", v.attempts}, {"violations", v.violations}};
      std::ostringstream text;
      text << "relator order " << cert.relator_order << " in Q; " << v.accepted << " samples, "
           << v.violations << " violations";
      emit(as_json, j, text.str());
      if (v.violations > 0) return kNegative;
      return v.accepted < samples ? kExhausted : kPositive;
    }

    if (verify->parsed()) {
      std::vector<CatalogEntry> entries;
      if (catalog_path.empty()) {
        entries = extension_catalog();
      } else {
        const json j = json::parse(read_file(catalog_path));
        for (const auto& e : j) entries.push_back(catalog_entry_from_json(e));
      }
      bool all = true;
      json rows = json::array();
      std::ostringstream text;
      for (const auto& e : entries) {
        const bool twisted = verify_prop_twisted(e.group, e.subgroup, e.t).all();
        bool decomposition = true;
        for (Element g = 0; g < e.group.order(); ++g) {
          decomposition = decomposition && conjugacy_decomposition(e.group, e.subgroup, g).holds;
        }
        all = all && twisted && decomposition;
        rows.push_back({{"name", e.name}, {"order", e.group.order()}, {"twisted", twisted},
                        {"decomposition", decomposition}});
        text << (twisted && decomposition ? "ok   " : "FAIL ") << e.name << " (order "
             << e.group.order() << ")\n";
      }
      emit(as_json, {{"entries", rows}, {"all", all}}, text.str() + (all ? "all passed" : "failures"));
      return all ? kPositive : kNegative;
    }

    if (witness->parsed()) {
      const auto p = load_group(group_path);
      budget.time_limit = std::chrono::milliseconds(time_limit_ms);
      const auto r = find_witness(p, parse_element(w1, p), parse_element(w2, p), budget);
      json j = {{"outcome", to_string(r.outcome)}, {"candidates_tried", r.candidates_tried}};
      std::string text = to_string(r.outcome);
      if (r.conjugator) {
        j["conjugator"] = show(p, *r.conjugator);
        text += ", conjugator: " + show(p, *r.conjugator);
      }
      if (r.certificate) {
        j["certificate"] = to_json(*r.certificate);
        text += ": target " + r.certificate->target_name + " (order " +
                std::to_string(r.certificate->target.order()) + "), stage-1 modulus " +
                std::to_string(r.certificate->stage1_modulus);
      }
      emit(as_json, j, text);
      switch (r.outcome) {
        case WitnessOutcome::certificate:
          return kPositive;
        case WitnessOutcome::conjugate:
          return kNegative;
        case WitnessOutcome::budget_exhausted:
          return kExhausted;
      }
    }

    if (replay_cmd->parsed()) {
      json j = json::parse(read_file(cert_path));
      if (j.contains("certificate")) j = j.at("certificate");
      const auto cert = certificate_from_json(j);
      std::string why;
      const bool ok = replay(cert, &why);
      emit(as_json, {{"valid", ok}, {"reason", why}}, ok ? "valid" : "invalid: " + why);
      return ok ? kPositive : kNegative;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << " near '" << e.token()
              << "': " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
