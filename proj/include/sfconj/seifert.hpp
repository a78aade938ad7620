#pragma once

// Cyclic extensions 1 -> <h> -> G -> H -> 1 where H is a free group, Z^2 or a
// closed hyperbolic surface group, the base generators act on the fiber by
// x^-1 h x = h^epsilon(x), and the base relator (if any) lifts to h^s.
// A positive fiber modulus N passes to the quotient G / <h^N>.
//
// Elements are kept as (base word, fiber exponent) with every h swept to the
// right, so the exponent is additive under multiplication up to the twist.

#include <cstdint>
#include <optional>
#include <vector>

#include "sfconj/surface.hpp"
#include "sfconj/words.hpp"

namespace sfconj {

enum class BaseKind { free, torus, surface };

const char* to_string(BaseKind kind);

class SeifertPresentation {
 public:
  /// Free base of the given rank. Default names x, y, z for rank <= 3 and
  /// x1..xr otherwise. An empty epsilon means epsilon == +1 everywhere.
  static SeifertPresentation free(int rank, std::vector<int> epsilon = {},
                                  long long fiber_modulus = 0,
                                  std::vector<std::string> names = {});
  /// Base Z^2 = <x, y | x y x^-1 y^-1>, relator lifting to h^euler_degree.
  static SeifertPresentation torus(long long euler_degree, std::vector<int> epsilon = {},
                                   long long fiber_modulus = 0);
  /// Base the genus-g surface group, relator lifting to h^euler_degree.
  static SeifertPresentation surface(int genus, long long euler_degree,
                                     std::vector<int> epsilon = {},
                                     long long fiber_modulus = 0);

  BaseKind kind() const { return kind_; }
  std::size_t rank() const { return base_alphabet_.rank(); }
  /// Surface genus; 1 for the torus, 0 for free bases.
  int genus() const { return genus_; }
  long long euler_degree() const { return euler_degree_; }
  long long fiber_modulus() const { return fiber_modulus_; }
  const std::vector<int>& epsilon() const { return epsilon_; }
  bool epsilon_trivial() const;

  const Alphabet& base_alphabet() const { return base_alphabet_; }
  /// Base alphabet followed by the fiber letter "h".
  const Alphabet& mixed_alphabet() const { return mixed_alphabet_; }
  std::uint32_t fiber_generator() const { return static_cast<std::uint32_t>(rank()); }

  /// Base relator (empty for free bases).
  const Word& relator() const { return relator_; }
  bool has_relator() const { return kind_ != BaseKind::free; }
  const SurfacePresentation& surface_presentation() const;

  /// epsilon extended multiplicatively to base words.
  int epsilon_of(const Word& base_word) const;

  SeifertPresentation with_fiber_modulus(long long n) const;

 private:
  SeifertPresentation(BaseKind kind, int genus, Alphabet base, std::vector<int> epsilon,
                      long long euler_degree, long long fiber_modulus);

  BaseKind kind_;
  int genus_;
  Alphabet base_alphabet_;
  Alphabet mixed_alphabet_;
  std::vector<int> epsilon_;
  long long euler_degree_;
  long long fiber_modulus_;
  Word relator_;
  std::optional<SurfacePresentation> surface_;
};

/// (base section of base_word) * h^fiber_exponent.
struct FiberedElement {
  Word base_word;
  long long fiber_exponent = 0;

  friend bool operator==(const FiberedElement&, const FiberedElement&) = default;
};

/// Sweeps every h to the right with h x = x h^epsilon(x); reduces the base word.
FiberedElement collect(const SeifertPresentation& p, const Word& mixed);
/// The mixed word base_word * h^fiber_exponent.
Word to_mixed_word(const SeifertPresentation& p, const FiberedElement& g);

FiberedElement multiply(const SeifertPresentation& p, const FiberedElement& a,
                        const FiberedElement& b);
FiberedElement inverse(const SeifertPresentation& p, const FiberedElement& a);
FiberedElement power(const SeifertPresentation& p, const FiberedElement& a, long long k);
/// c^-1 g c.
FiberedElement conjugate_by(const SeifertPresentation& p, const FiberedElement& g,
                            const FiberedElement& c);

bool base_is_trivial(const SeifertPresentation& p, const Word& base_word);
/// The exponent t with (base section of w) == h^t, for w trivial in the base.
/// Not reduced modulo the fiber modulus. Throws if w is not trivial in the base.
long long trivial_fiber(const SeifertPresentation& p, const Word& base_word);

bool equal(const SeifertPresentation& p, const FiberedElement& g1, const FiberedElement& g2);

/// {n : g ~ g h^n} == lambda Z, or lambda Z u (lambda Z + lambda0) when lambda0
/// is present. lambda == 0 encodes {0}.
struct LambdaPair {
  long long lambda = 0;
  std::optional<long long> lambda0;

  bool contains(long long n) const;
  friend bool operator==(const LambdaPair&, const LambdaPair&) = default;
};

/// Throws std::invalid_argument when the fiber modulus is nonzero.
LambdaPair lambda_invariants(const SeifertPresentation& p, const FiberedElement& g);

/// A conjugator c (as a mixed word) with c^-1 g1 c == g2, if one exists.
/// Decides conjugacy in G when the fiber modulus is 0 and in G / <h^N> otherwise.
std::optional<Word> are_conjugate(const SeifertPresentation& p, const FiberedElement& g1,
                                  const FiberedElement& g2);

}  // namespace sfconj
