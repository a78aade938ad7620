#pragma once

// Closed orientable surface groups of genus g >= 2,
//   < a1, b1, ..., ag, bg | [a1,b1] ... [ag,bg] >,
// with the word and conjugacy problems solved by small-cancellation (Dehn)
// reduction. Every piece of the symmetrized relator has length 1, so the
// presentation is C'(1/6) for all g >= 2.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sfconj/words.hpp"

namespace sfconj {

/// A rotation of r or of r^-1, stored as `word == shift^-1 * r^sign * shift`.
struct RelatorVariant {
  Word word;
  int sign = 1;
  Word shift;
  std::uint64_t shift_parity = 0;
};

class SurfacePresentation {
 public:
  static constexpr int kMaxGenus = 32;

  /// Throws std::invalid_argument unless 2 <= genus <= kMaxGenus.
  explicit SurfacePresentation(int genus);

  int genus() const { return genus_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t rank() const { return alphabet_.rank(); }
  /// [a1,b1]...[ag,bg] as a linear word of length 4g.
  const Word& relator() const { return relator_; }
  std::size_t relator_length() const { return relator_.size(); }
  /// Half the relator length; Dehn reduction fires on matches longer than this.
  std::size_t half() const { return relator_.size() / 2; }

  std::span<const RelatorVariant> variants() const { return variants_; }
  /// Indices of the variants whose first letter is `l` (always two of them).
  std::span<const std::uint32_t> variants_starting_with(Letter l) const;

 private:
  int genus_;
  Alphabet alphabet_;
  Word relator_;
  std::vector<RelatorVariant> variants_;
  std::vector<std::vector<std::uint32_t>> by_first_letter_;
};

/// One Dehn move: the subword of `length` letters at `position` equal to a
/// prefix of variant `variant` was replaced by the inverse of the remaining
/// suffix. The old word equals (x R x^-1) * new word, where x is the prefix
/// before `position`; `parity` is the generator-parity mask of x * shift.
struct DehnMove {
  std::size_t position = 0;
  std::uint32_t variant = 0;
  std::size_t length = 0;
  int signed_degree = 0;
  std::uint64_t parity = 0;
};

struct DehnTrace {
  std::vector<DehnMove> moves;

  long long total_degree() const;
  /// Sum of signed_degree * epsilon(x * shift) over the moves, where epsilon
  /// is the homomorphism to {+1,-1} given per generator.
  long long twisted_degree(std::span<const int> epsilon) const;
};

struct DehnResult {
  Word reduced;
  DehnTrace trace;
};

/// Leftmost-first Dehn reduction.
DehnResult dehn_reduce(const SurfacePresentation& p, const Word& w);
/// Dehn reduction applying a uniformly random applicable move at each step.
DehnResult dehn_reduce(const SurfacePresentation& p, const Word& w, std::mt19937_64& schedule);

bool is_trivial(const SurfacePresentation& p, const Word& w);

/// Signed number of relator occurrences in w, for w trivial in the group.
/// Throws std::invalid_argument if w is not trivial.
long long r_degree(const SurfacePresentation& p, const Word& w);

/// As r_degree, but each occurrence x r^{+-1} x^-1 counts epsilon(x).
long long twisted_r_degree(const SurfacePresentation& p, const Word& w,
                           std::span<const int> epsilon);

/// A word together with a conjugator: conjugator^-1 * source * conjugator
/// equals `word` in the group.
struct ConjugateForm {
  Word word;
  Word conjugator;
};

/// Cyclically reduced conjugate of w none of whose rotations admits a Dehn
/// move.
ConjugateForm cyclic_dehn_minimize(const SurfacePresentation& p, const Word& w);

/// Closure of the minimal conjugates of w under rotations, half-relator flips
/// and single-letter conjugations. Keys are least rotations; values are the
/// conjugators from w.
struct ConjugacyClosure {
  std::size_t length = 0;
  std::map<Word, Word> representatives;
};

ConjugacyClosure conjugacy_closure(const SurfacePresentation& p, const Word& w);

/// Returns c with c^-1 u c == v in the group, if u and v are conjugate.
std::optional<Word> are_conjugate_surface(const SurfacePresentation& p, const Word& u,
                                          const Word& v);

/// Generator z of the (cyclic) centralizer of w, with w == z^exponent.
/// Throws std::invalid_argument if w is trivial.
PrimitiveRoot centralizer_root_surface(const SurfacePresentation& p, const Word& w);

}  // namespace sfconj
