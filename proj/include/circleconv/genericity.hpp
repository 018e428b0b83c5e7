#pragma once

// Weyl averages g_N(x) = (1/N) sum_{n<N} e(k c_n x) and their integrals
// against grid measures, plus a Monte-Carlo estimator for digit measures.

#include <complex>
#include <cstdint>

#include "circleconv/convlab.hpp"
#include "circleconv/digit_measure.hpp"
#include "circleconv/sequence.hpp"

namespace circleconv {

struct WeylAverage {
  SequenceSpec seq;
  std::int64_t k = 1;
  std::uint64_t terms = 1;  // N
};

void validate(const WeylAverage& w);

/// The rational point numerator / denominator of the circle.
struct TorusPoint {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
};

TorusPoint grid_point(const DigitString& x);

/// g_N(x), with each phase k c_n x reduced exactly modulo 1.
std::complex<double> g_value(const WeylAverage& w, const TorusPoint& x);

/// integral of g_N against the grid law: (1/N) sum_n mu^(k c_n).
std::complex<double> mean_g(const GridMeasure& mu, const WeylAverage& w);

/// integral of |g_N|^2 against the grid law.
double second_moment_g(const GridMeasure& mu, const WeylAverage& w);

/// second_moment_g(mu) <= sqrt(second_moment_g(mu * reflect(mu))).
InequalityCheck reflection_moment_check(const GridMeasure& mu, const WeylAverage& w);

inline constexpr unsigned kRhoStarFrequencies = 40;

struct RhoStar {
  double value = 0;
  double tail_bound = 0;  // bound on the neglected |k| > k_max terms
};

/// sum_{|k| <= k_max} 2^-|k| |mu^(k) - nu^(k)|^2 with grid coefficients.
RhoStar rho_star(const GridMeasure& mu, const GridMeasure& nu, unsigned k_max = kRhoStarFrequencies);

struct NormalityEstimate {
  double mean = 0;
  double standard_error = 0;
  unsigned depth = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr unsigned kGuardDigits = 8;
inline constexpr std::uint64_t kSampleChunk = 4096;

/// Monte-Carlo mean of |g_N|^2 under the digit measure. Samples are drawn to
/// depth D with p^D >= |k| max|c_n| p^guard, so each phase is resolved to p^-guard.
NormalityEstimate normality_estimate(const DigitMeasure& m, const WeylAverage& w, std::uint64_t samples,
                                     std::uint64_t seed, unsigned guard = kGuardDigits);

}  // namespace circleconv
