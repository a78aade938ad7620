#pragma once

// Finite-quotient witnesses for non-conjugacy. A certificate is a
// homomorphism from G / <h^M> onto a finite table under which the images of
// g1 and g2 are not conjugate; replay() re-checks it from scratch.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfconj/finite_group.hpp"
#include "sfconj/seifert.hpp"

namespace sfconj {

struct SearchBudget {
  std::size_t max_target_order = 256;
  std::size_t max_candidates = 10000;
  std::chrono::milliseconds time_limit{60000};
  std::uint64_t seed = 1;

  /// Defaults, with max_candidates overridden by SFCONJ_MAX_CANDIDATES if set.
  static SearchBudget from_env();
};

struct WitnessCertificate {
  SeifertPresentation presentation = SeifertPresentation::free(1);
  FiberedElement g1;
  FiberedElement g2;
  long long stage1_modulus = 0;
  std::string target_name;
  FiniteGroupTable target;
  /// Images of the base generators followed by the image of h.
  std::vector<Element> generator_images;
  Element image_g1 = 0;
  Element image_g2 = 0;
  std::vector<Element> class_of_image_g1;
  std::size_t candidates_tried = 0;
};

enum class WitnessOutcome { conjugate, certificate, budget_exhausted };

const char* to_string(WitnessOutcome outcome);

struct WitnessResult {
  WitnessOutcome outcome = WitnessOutcome::budget_exhausted;
  std::optional<Word> conjugator;  ///< mixed word, when conjugate
  std::optional<WitnessCertificate> certificate;
  std::size_t candidates_tried = 0;
};

WitnessResult find_witness(const SeifertPresentation& p, const FiberedElement& g1,
                           const FiberedElement& g2, const SearchBudget& budget = {});

/// Re-verifies every claim in the certificate. On failure, `reason` says why.
bool replay(const WitnessCertificate& cert, std::string* reason = nullptr);

nlohmann::json to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace sfconj
