#pragma once

// Free-group words over a finite alphabet of named generators.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfconj {

/// Name reserved for the fiber generator of a Seifert presentation.
inline constexpr std::string_view kFiberName = "h";

struct Letter {
  std::uint32_t generator = 0;
  bool inverted = false;

  constexpr Letter inverse() const { return {generator, !inverted}; }

  // Ordering: generator index first, then x before x^-1.
  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

constexpr bool cancels(Letter a, Letter b) {
  return a.generator == b.generator && a.inverted != b.inverted;
}

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t rank() const { return names_.size(); }
  const std::string& name(std::uint32_t generator) const;
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  /// Same names plus `extra` appended as the last generator.
  Alphabet extended(std::string extra) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A finite sequence of letters. Not necessarily reduced; use free_reduce.
class Word {
 public:
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  static Word generator(std::uint32_t g, int exponent = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const_iterator begin() const { return letters_.begin(); }
  const_iterator end() const { return letters_.end(); }

  Word inverse() const;
  /// Concatenation, no cancellation.
  Word operator*(const Word& rhs) const;
  /// Unreduced power; negative exponents use the inverse.
  Word power(long long k) const;
  Word subword(std::size_t pos, std::size_t len) const;
  /// Rotation: letters [k, n) followed by [0, k).
  Word rotated(std::size_t k) const;

  /// Sum of exponents of each generator, indexed by generator (length `rank`).
  std::vector<long long> exponent_sums(std::size_t rank) const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// A cyclically reduced word stored in its lexicographically least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Requires `w` cyclically reduced; stores its least rotation.
  explicit CyclicWord(const Word& w);

  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }
  /// Smallest d dividing size() such that rotating by d fixes the word.
  std::size_t period() const;

  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  Word word_;
};

/// Index k of the lexicographically least rotation of w.
std::size_t least_rotation(const Word& w);

Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

struct CyclicReduction {
  CyclicWord core;
  /// w == conjugator * core * conjugator^-1 in the free group.
  Word conjugator;
};

CyclicReduction cyclic_reduce(const Word& w);

/// Returns c with c^-1 u c == v in the free group, if u and v are conjugate.
std::optional<Word> free_conjugate(const Word& u, const Word& v);

struct PrimitiveRoot {
  Word root;
  long long exponent = 1;
};

/// w == root^exponent with root not a proper power. Throws on the empty word.
PrimitiveRoot primitive_root(const Word& w);

/// Uniformly random freely reduced word of exactly `length` letters.
Word random_reduced_word(std::size_t rank, std::size_t length, std::mt19937_64& rng);

/// Space-separated rendering with inverses as upper-case names ("a1 B1").
/// Generator names always contain a lower-case letter, so this is unambiguous.
std::string to_string(const Word& w, const Alphabet& alphabet);

}  // namespace sfconj
