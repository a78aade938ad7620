#pragma once

// Magnus embedding of a free group into the units of the free associative
// algebra Z<X_1..X_r> / (degree > c), optionally with coefficients mod p^m.
// Images of words of lower-central class c become central elements of
// prescribed prime-power order.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "sfconj/seifert.hpp"
#include "sfconj/words.hpp"

namespace sfconj {

using Integer = boost::multiprecision::cpp_int;
using Monomial = std::vector<std::uint32_t>;

class TruncatedPoly {
 public:
  /// Zero polynomial. modulus == 0 means integer coefficients.
  TruncatedPoly(std::size_t rank, std::size_t degree_cap, Integer modulus = 0);

  static TruncatedPoly one(std::size_t rank, std::size_t degree_cap, Integer modulus = 0);
  /// 1 + X_g for a plain letter, the truncated series 1 - X_g + X_g^2 - ... for an inverse.
  static TruncatedPoly letter_image(Letter l, std::size_t rank, std::size_t degree_cap,
                                    Integer modulus = 0);

  std::size_t rank() const { return rank_; }
  std::size_t degree_cap() const { return cap_; }
  const Integer& modulus() const { return modulus_; }
  const std::map<Monomial, Integer>& terms() const { return terms_; }
  Integer coefficient(const Monomial& m) const;
  void set(const Monomial& m, Integer c);

  TruncatedPoly operator*(const TruncatedPoly& rhs) const;
  TruncatedPoly operator+(const TruncatedPoly& rhs) const;
  TruncatedPoly operator-(const TruncatedPoly& rhs) const;
  friend bool operator==(const TruncatedPoly&, const TruncatedPoly&) = default;
  /// Arbitrary total order on term maps, for use as a container key.
  friend bool operator<(const TruncatedPoly& a, const TruncatedPoly& b) { return a.terms_ < b.terms_; }

  bool is_one() const;
  /// Smallest d >= 1 carrying a nonzero coefficient, if any.
  std::optional<std::size_t> min_positive_degree() const;
  /// Homogeneous part of degree d.
  TruncatedPoly homogeneous(std::size_t d) const;
  TruncatedPoly pow(const Integer& e) const;
  /// Same terms with coefficients reduced mod `modulus` and degrees capped at `cap`.
  TruncatedPoly reduced(std::size_t cap, Integer modulus) const;

 private:
  void normalize(Integer& c) const;

  std::size_t rank_;
  std::size_t cap_;
  Integer modulus_;
  std::map<Monomial, Integer> terms_;
};

struct MagnusParams {
  std::size_t rank = 1;
  std::size_t cls = 1;
  std::uint64_t prime = 2;
  unsigned exponent = 1;

  Integer modulus() const;
  friend bool operator==(const MagnusParams&, const MagnusParams&) = default;
};

TruncatedPoly magnus_eval(const MagnusParams& params, const Word& w);
/// Integer-coefficient Magnus image truncated at degree `cls`.
TruncatedPoly magnus_eval_integer(std::size_t rank, std::size_t cls, const Word& w);

inline constexpr std::size_t kDefaultClassLimit = 8;

/// Least c with w outside the (c+1)-th lower central term, i.e. the lowest
/// nonzero positive degree of the integer Magnus image. Throws on trivial w
/// and when c exceeds c_max.
std::size_t lcs_class(const Word& w, std::size_t rank, std::size_t c_max = kDefaultClassLimit);

struct OrderWitness {
  MagnusParams params;
  Word word;
  unsigned k = 1;
  /// Minimal p-adic valuation of the class-c coefficients of the image.
  unsigned valuation = 0;
  TruncatedPoly image{1, 1};
  Integer verified_order = 0;
  bool centrality_checked = false;
};

/// Image of g in a finite p-group where it is central of order exactly p^k.
/// Both properties are checked before returning; std::logic_error if either fails.
OrderWitness order_witness(const Word& g, std::size_t rank, std::uint64_t p, unsigned k,
                           std::size_t c_max = kDefaultClassLimit);
/// The same construction with order p^target_k, 1 <= target_k <= witness.k.
OrderWitness reduce_central_order(const OrderWitness& witness, unsigned target_k);

/// Product of prime-power witnesses; the image of g has order exactly `order`.
struct CompositeWitness {
  std::uint64_t order = 1;
  std::vector<OrderWitness> factors;

  /// Images of w in each factor (same parameters as the factors).
  std::vector<TruncatedPoly> image_of(const Word& w) const;
  bool kills(const Word& w) const;
};

CompositeWitness order_witness_composite(const Word& g, std::size_t rank, std::uint64_t n,
                                         std::size_t c_max = kDefaultClassLimit);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

nlohmann::json to_json(const TruncatedPoly& poly);
nlohmann::json to_json(const OrderWitness& witness);
nlohmann::json to_json(const CompositeWitness& witness);

/// Finite quotient Q of the free group on the surface generators in which the
/// relator has order n = N / gcd(N, s), together with a membership test for
/// the image of ker(F -> Q) in the quotient with fiber modulus N.
struct SplitCertificate {
  SeifertPresentation presentation;
  std::uint64_t relator_order = 1;
  CompositeWitness q;

  /// Sufficient test for g lying in the image of ker(F -> Q). Elements over
  /// the trivial base element are decided exactly: h^t lies there iff t = 0 mod N.
  bool contains(const FiberedElement& g) const;
};

/// Requires a surface base, fiber modulus N > 0 and trivial epsilon.
SplitCertificate central_split(const SeifertPresentation& p);

struct SplitValidation {
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  std::size_t violations = 0;
};

/// Samples words trivial in the base surface group and in Q and checks that
/// their fiber bookkeeping vanishes mod N.
SplitValidation validate_central_split(const SplitCertificate& cert, std::size_t samples,
                                       std::uint64_t seed);

nlohmann::json to_json(const SplitCertificate& cert);

}  // namespace sfconj
