#pragma once

// Conditional information of digit blocks for measures on the p^-K grid.
//
// A grid measure is a law on Z/p^K where index m stands for the point m/p^K.
// The top k digits of m are floor(m / p^(K-k)); the remaining K-k digits
// stand in for the infinite tail x_{k+1...}. All statements below are exact
// at every finite depth.

#include <cstdint>
#include <span>
#include <vector>

#include "circleconv/common.hpp"
#include "circleconv/cyclic.hpp"
#include "circleconv/digit_measure.hpp"

namespace circleconv {

struct GridMeasure {
  unsigned base = 2;
  unsigned depth = 0;
  CyclicMeasure law = CyclicMeasure::point_mass(1, 0);

  /// Infers the depth from the modulus, which must be a power of base.
  static GridMeasure from_law(unsigned base, CyclicMeasure law);
  static GridMeasure from_digits(const DigitMeasure& m, unsigned depth, std::uint64_t grid_cap = Caps{}.grid);

  std::uint64_t modulus() const { return law.modulus(); }
};

GridMeasure convolve(const GridMeasure& a, const GridMeasure& b);
GridMeasure reflect(const GridMeasure& a);

/// H(m mod r) for r dividing the modulus.
double residue_entropy(const CyclicMeasure& law, std::uint64_t r);

/// E H(top k digits | low digits) = H(m) - H(m mod p^(K-k)).
double expected_I_k(const GridMeasure& mu, unsigned k);

/// E H(top k digits | top mod G, low digits) for G a subgroup of Z/p^k.
double expected_I_G(const GridMeasure& mu, unsigned k, const SubgroupHandle& g);

/// E H(top k digits mod G | low digits).
double expected_coset_entropy(const GridMeasure& mu, unsigned k, const SubgroupHandle& g);

/// -sum_m law[m] log(law[m] / (delta_G * law)[m]), delta_G the unnormalized
/// sum of point masses at g p^(K-k), g in G. Equals expected_I_G.
double expected_I_G_by_density(const GridMeasure& mu, unsigned k, const SubgroupHandle& g);

inline constexpr double kInequalitySlack = 1e-10;

struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// lhs = E H_{mu*nu}(top mod G | low), rhs = the same for mu.
InequalityCheck check_coset_entropy_growth(const GridMeasure& mu, const GridMeasure& nu, unsigned k, const SubgroupHandle& g);

/// lhs = change of E I_k under convolution with nu, rhs = change of E I_G.
InequalityCheck check_information_drop(const GridMeasure& mu, const GridMeasure& nu, unsigned k, const SubgroupHandle& g);

/// lhs = H(top ell digits), rhs = (ell - 1) log p - log|G| + E I_G. Requires |G| >= p^ell.
InequalityCheck top_digit_entropy_bound(const GridMeasure& mu, unsigned k, const SubgroupHandle& g, unsigned ell);

/// Expected total variation between the law of the top k digits given the low
/// digits and its shift by t: (1/2) sum_m |law[m] - law[m - t p^(K-k)]|.
double shift_distance(const GridMeasure& mu, unsigned k, std::uint64_t t);

/// Largest subgroup of Z/p^k all of whose elements move the conditional top-k
/// law by at most tol in expected total variation. A finite-depth proxy only.
SubgroupHandle near_invariant_subgroup(const GridMeasure& mu, unsigned k, double tol);

/// Largest ell with p^ell <= p_*^k, p_* the smallest prime factor of p.
unsigned digit_floor(unsigned base, unsigned k);

struct ExperimentRow {
  std::uint64_t n = 0;
  double h_norm = 0;          // H(law) / (K log p)
  double i_k_norm = 0;        // E I_k / (k log p)
  unsigned ell_k = 0;
  std::uint64_t subgroup_order = 1;
  double epsilon = 0;         // log|G| - E I_G at this n
  double top_entropy = 0;     // H(top ell digits)
  double top_bound = 0;       // (ell - 1) log p - (k + 1) epsilon
  bool bound_applies = false; // |G| >= p^ell
  bool bound_holds = false;
};

struct ExperimentConfig {
  unsigned depth = 12;
  unsigned report_k = 0;  // 0 selects max(1, depth / 2)
  double tol = 0.05;
  std::uint64_t grid_cap = Caps{}.grid;
};

/// Row n describes the grid law of mu_1 * ... * mu_n.
std::vector<ExperimentRow> entropy_growth_experiment(std::span<const DigitMeasure> measures,
                                                  const ExperimentConfig& config);

}  // namespace circleconv
