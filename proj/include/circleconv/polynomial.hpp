#pragma once

// Exact polynomials over Q, used as recursion polynomials of integer sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circleconv/common.hpp"

namespace circleconv {

class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  /// Coefficients in ascending order; trailing zeros are dropped.
  explicit RationalPolynomial(std::vector<Rational> ascending);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(unsigned degree, const Rational& c = Rational(1));
  /// Integer coefficients listed from the leading one down: {1, -7, 6} is x^2 - 7x + 6.
  static RationalPolynomial from_descending(const std::vector<BigInt>& coefficients);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  bool is_monic() const { return !is_zero() && leading() == 1; }
  bool has_integer_coefficients() const;
  RationalPolynomial monic() const;
  RationalPolynomial derivative() const;
  Rational operator()(const Rational& x) const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

  /// Quotient and remainder; throws on division by zero.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& divisor) const;
  bool divisible_by(const RationalPolynomial& divisor) const;

  /// Human-readable form such as "x^2 - 7*x + 6".
  std::string to_string() const;
  /// Leading-first coefficient list such as "1,-7,6"; requires integer coefficients.
  std::string to_descending_list() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd over Q; gcd(0, 0) = 0.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);
bool is_squarefree(const RationalPolynomial& f);

/// gcd of the absolute values of the non-leading coefficients of a monic
/// integer polynomial; 0 when they all vanish.
BigInt gcd_bracket(const RationalPolynomial& f);

/// The m-th cyclotomic polynomial.
RationalPolynomial cyclotomic(std::uint64_t m);

/// Every m >= 1 with phi(m) <= bound, increasing.
std::vector<std::uint64_t> totient_at_most(std::uint64_t bound);

/// Res_y(f(y), f(x y)) as a polynomial in x.
RationalPolynomial root_ratio_resultant(const RationalPolynomial& f);

struct Degeneracy {
  bool degenerate = false;
  std::uint64_t witness = 0;  // m with Phi_m dividing f or the ratio resultant
  bool from_ratio = false;    // witness came from a ratio of roots
  bool squarefree = true;
};

/// Whether a root of f or a ratio of two roots (with distinct indices) is a
/// root of unity. Requires f monic with integer coefficients and f(0) != 0.
/// Ratio 1 between repeated roots is not counted.
Degeneracy is_degenerate(const RationalPolynomial& f);

}  // namespace circleconv
