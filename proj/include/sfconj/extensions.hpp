#pragma once

// Virtually inner automorphisms, the extension
//   S*_phi = < S, t | t^n = x, t^-1 g t = phi(g) >
// and twisted conjugacy: g1 ~_phi g2 iff phi(h)^-1 g1 h = g2 for some h.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfconj/finite_group.hpp"
#include "sfconj/surface.hpp"
#include "sfconj/words.hpp"

namespace sfconj {

// ---------------------------------------------------------------------------
// Finite carriers

/// Automorphism of a finite group given as the permutation a -> images[a].
class FiniteAutomorphism {
 public:
  /// Throws std::invalid_argument unless `images` is a bijective homomorphism.
  FiniteAutomorphism(const FiniteGroupTable& group, std::vector<Element> images);

  static FiniteAutomorphism identity(const FiniteGroupTable& group);
  /// s -> w^-1 s w.
  static FiniteAutomorphism conjugation(const FiniteGroupTable& group, Element w);

  Element operator()(Element a) const { return images_[a]; }
  const std::vector<Element>& images() const { return images_; }
  /// First this, then `next`.
  FiniteAutomorphism then(const FiniteAutomorphism& next) const;
  FiniteAutomorphism power(std::size_t n) const;

  friend bool operator==(const FiniteAutomorphism&, const FiniteAutomorphism&) = default;

 private:
  explicit FiniteAutomorphism(std::vector<Element> images) : images_(std::move(images)) {}
  std::vector<Element> images_;
};

/// Some x with phi(g) == x^-1 g x for all g.
std::optional<Element> inner_witness(const FiniteGroupTable& group, const FiniteAutomorphism& phi);

struct VirtuallyInnerFinite {
  std::size_t period = 1;  ///< least n >= 1 with phi^n inner
  Element witness = 0;     ///< phi^n(g) == witness^-1 g witness
};

VirtuallyInnerFinite virtually_inner(const FiniteGroupTable& group, const FiniteAutomorphism& phi);

/// Twisted classes {phi(h)^-1 g h : h}, each sorted, ordered by least member.
std::vector<std::vector<Element>> twisted_classes_finite(const FiniteGroupTable& s,
                                                         const FiniteAutomorphism& phi);

struct TwistedReport {
  /// ok[i] refers to the i-th element of the subgroup S.
  std::vector<bool> ok;
  bool all() const;
};

/// For S normal in G = <S, t> and phi(s) = t^-1 s t: checks, for each g in S,
/// that the G-conjugacy class of t g equals t [g]_phi.
/// Throws std::invalid_argument when the structural preconditions fail.
TwistedReport verify_prop_twisted(const FiniteGroupTable& g, const std::vector<Element>& s,
                                  Element t);

struct ConjugacyDecomposition {
  std::vector<Element> coset_representatives;  ///< x_i with G = union x_i S
  std::vector<Element> conjugates;             ///< g_i = x_i^-1 g x_i
  /// g_i [1]_{phi_i} in G-indices, phi_i(s) = g_i^-1 s g_i.
  std::vector<std::vector<Element>> pieces;
  std::vector<Element> conjugacy_class;
  bool holds = false;
};

/// Throws std::invalid_argument when S is not normal in G.
ConjugacyDecomposition conjugacy_decomposition(const FiniteGroupTable& g,
                                               const std::vector<Element>& s, Element element);

struct CatalogEntry {
  std::string name;
  FiniteGroupTable group;
  std::vector<Element> subgroup;  ///< S, sorted
  Element t = 0;
};

/// Finite extensions G = <S, t> with S normal, all of order <= 64.
std::vector<CatalogEntry> extension_catalog();

nlohmann::json to_json(const CatalogEntry& entry);
CatalogEntry catalog_entry_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Presentation carriers

/// A free group or a closed surface group.
class Carrier {
 public:
  static Carrier free(std::size_t rank, std::vector<std::string> names = {});
  static Carrier surface(int genus);

  std::size_t rank() const { return alphabet_.rank(); }
  const Alphabet& alphabet() const { return alphabet_; }
  bool is_surface() const { return surface_.has_value(); }
  const SurfacePresentation& surface() const { return *surface_; }
  /// Defining relators (empty for free carriers).
  std::vector<Word> relators() const;
  bool is_trivial(const Word& w) const;
  bool equal(const Word& u, const Word& v) const { return is_trivial(u * v.inverse()); }

 private:
  Alphabet alphabet_;
  std::optional<SurfacePresentation> surface_;
};

/// An endomorphism given by generator images; the automorphism data is
/// certified by phi^n == conjugation by x, which also forces bijectivity.
class PresentationAutomorphism {
 public:
  /// Throws std::invalid_argument unless relators map to trivial words and
  /// phi^period(g) == x^-1 g x holds for every generator g.
  PresentationAutomorphism(Carrier carrier, std::vector<Word> images, std::size_t period,
                           Word inner_witness);

  const Carrier& carrier() const { return carrier_; }
  const std::vector<Word>& images() const { return images_; }
  std::size_t period() const { return period_; }
  const Word& inner_witness() const { return inner_witness_; }

  Word apply(const Word& w) const;

 private:
  Carrier carrier_;
  std::vector<Word> images_;
  std::size_t period_;
  Word inner_witness_;
};

/// Substitutes generator images into w and freely reduces.
Word substitute(const std::vector<Word>& images, const Word& w);

/// Least n <= max_period such that phi^n is conjugation by some x with
/// |x| <= max_witness_length, found by bounded search. Minimality holds only
/// relative to the witness bound.
std::optional<std::pair<std::size_t, Word>> find_virtual_period(
    const Carrier& carrier, const std::vector<Word>& images, std::size_t max_period,
    std::size_t max_witness_length);

struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

/// S*_phi with the new generator named "t" (or "t1", ... on collision).
Presentation star_extension(const PresentationAutomorphism& phi);

std::string to_string(const Presentation& p);

/// Shortlex search for h with |h| <= max_length and phi(h)^-1 g1 h == g2.
/// An empty result is not a proof of non-conjugacy.
std::optional<Word> twisted_search(const PresentationAutomorphism& phi, const Word& g1,
                                   const Word& g2, std::size_t max_length);

/// Freely reduced words of length <= max_length in shortlex order.
std::vector<Word> reduced_words_up_to(std::size_t rank, std::size_t max_length);

}  // namespace sfconj
