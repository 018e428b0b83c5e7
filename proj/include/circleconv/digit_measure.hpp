#pragma once

// Digit-process models of measures on the circle: x = sum_j x_j p^-j with the
// digit process Bernoulli (i.i.d.), Markov (stationary chain) or a
// position-dependent product.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "circleconv/common.hpp"
#include "circleconv/cyclic.hpp"

namespace circleconv {

struct Bernoulli {
  Eigen::VectorXd weights;
};

struct Markov {
  Eigen::MatrixXd transition;  // row-stochastic
  Eigen::VectorXd stationary;
};

/// Digits at the fixed positions (1-based, most significant first) equal
/// `digit`; all other digits are independent with law `other`.
struct ProductRule {
  std::vector<std::uint64_t> fixed_positions;  // sorted, ignored when squares is set
  bool squares = false;                        // fixed positions 1, 4, 9, 16, ...
  unsigned digit = 0;
  Eigen::VectorXd other;

  bool is_fixed(std::uint64_t position) const;
  bool is_constant() const;
  Eigen::VectorXd law_at(std::uint64_t position) const;
};

class DigitMeasure {
 public:
  using Kind = std::variant<Bernoulli, Markov, ProductRule>;

  static DigitMeasure bernoulli(Eigen::VectorXd weights);
  /// Bernoulli(1 - beta, beta/(p-1), ..., beta/(p-1)).
  static DigitMeasure bernoulli_beta(unsigned base, double beta);
  static DigitMeasure uniform(unsigned base);
  /// Stationary law by lazy power iteration; chains without a unique
  /// stationary law are rejected.
  static DigitMeasure markov(Eigen::MatrixXd transition);
  static DigitMeasure product(unsigned base, ProductRule rule);

  unsigned base() const { return base_; }
  const Kind& kind() const { return kind_; }
  /// Invariant under x -> px mod 1. Product measures only when their rule is constant.
  bool is_invariant() const;
  bool is_uniform() const;

 private:
  DigitMeasure(unsigned base, Kind kind) : base_(base), kind_(std::move(kind)) {}

  unsigned base_;
  Kind kind_;
};

/// Shannon entropy (nats) of a finite probability vector.
double shannon_entropy(const Eigen::VectorXd& law);

/// Entropy rate of the digit process in nats per digit.
double entropy_rate(const DigitMeasure& m);

/// psi(beta) = H(1 - beta, beta/(p-1), ..., beta/(p-1)) on [0, 1 - 1/p].
double psi(double beta, unsigned base);
/// Inverse of psi on [0, log p], by bisection to 1e-12 or better.
double psi_inv(double h, unsigned base);

/// Constants for psi_inv(h) >= C h / |log(h / log p)| on 0 < h <= h0.
struct PsiInverseBound {
  double constant;
  double threshold;
};
PsiInverseBound psi_inverse_bound(unsigned base);

/// Exact law of the integer x_1 p^(k-1) + ... + x_k on Z/p^k.
CyclicMeasure block_distribution(const DigitMeasure& m, unsigned digits,
                                 std::uint64_t grid_cap = Caps{}.grid);

struct ConvolutionBlock {
  CyclicMeasure law;     // on Z/p^k
  double error_bound;    // certified total-variation error
  unsigned buffer_digits;
};

/// Law of the top k digits of m_1 * ... * m_n. Blocks are convolved at depth
/// k + b and projected; the bound is the mass of the cells whose low b digits
/// are >= p^b - n, where an unmodelled carry could reach the top k digits.
/// b grows until the bound is <= tol.
ConvolutionBlock convolution_block(std::span<const DigitMeasure> measures, unsigned digits, double tol,
                                   std::uint64_t grid_cap = Caps{}.grid);

/// Fourier coefficient of the measure at an integer frequency, as a truncated
/// product over digit positions. The neglected tail changes the result by < tol.
std::complex<double> fourier_coefficient(const DigitMeasure& m, std::int64_t freq, double tol);

/// A point on the p^-digits grid, stored as its digit string.
struct DigitString {
  unsigned base = 2;
  std::vector<std::uint8_t> digits;  // digits[0] is the most significant

  /// Integer index sum_i digits[i] p^(n-1-i); requires p^n < 2^63.
  std::uint64_t index() const;
  double value() const;
};

/// Deterministic stream seed for chunk `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

DigitString sample(const DigitMeasure& m, unsigned digits, std::mt19937_64& rng);
DigitString sample(const DigitMeasure& m, unsigned digits, std::uint64_t seed);

struct CounterexampleFamily {
  std::vector<DigitMeasure> measures;
  std::vector<double> betas;
  std::vector<std::complex<double>> first_coefficients;  // mu_i^(1)
  double bound = 1.0;              // lower bound on lim |prod mu_i^(1)|
  bool used_direct_product = false;
  std::string warning;
};

/// Bernoulli measures with normalized entropies h_i whose convolutions keep
/// a first Fourier coefficient bounded away from zero when sum beta_i is small.
CounterexampleFamily counterexample_family(std::span<const double> normalized_entropies, unsigned base,
                                           double tol = 1e-12);

}  // namespace circleconv
