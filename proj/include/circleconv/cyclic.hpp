#pragma once

// Probability measures on the finite cyclic group Z/NZ.
//
// Weights are stored densely (index i = mass at residue i) in an Eigen column
// vector. The scalar is either double (the working type) or Rational (exact
// mode, moduli up to Caps::exact_modulus, used by oracle tests).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "circleconv/common.hpp"

namespace circleconv {

inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kDriftLimit = 1e-6;
/// Moduli above this use the fast transform for convolution.
inline constexpr std::uint64_t kDirectConvolutionLimit = 4096;

template <typename Scalar>
inline double to_double(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return static_cast<double>(x);
  } else {
    return x.template convert_to<double>();
  }
}

template <typename Scalar>
class BasicCyclicMeasure {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Validates the weights: nonempty, nonnegative, summing to one (within
  /// kMassTolerance for double, exactly for Rational).
  explicit BasicCyclicMeasure(Vector weights) : weights_(std::move(weights)) {
    check_modulus(static_cast<std::uint64_t>(weights_.size()));
    Scalar total(0);
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
      const Scalar& w = weights_[i];
      if constexpr (std::is_floating_point_v<Scalar>) {
        if (!std::isfinite(w)) throw std::invalid_argument("weight is not finite");
      }
      if (w < Scalar(0)) throw std::invalid_argument("negative weight at residue " + std::to_string(i));
      total += w;
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (std::abs(total - 1.0) > kMassTolerance) {
        throw std::invalid_argument("weights sum to " + format_real(total) + ", expected 1");
      }
    } else {
      if (total != Scalar(1)) throw std::invalid_argument("exact weights do not sum to 1");
    }
  }

  static BasicCyclicMeasure uniform(std::uint64_t modulus) {
    check_modulus(modulus);
    Vector w = Vector::Constant(static_cast<Eigen::Index>(modulus), Scalar(1) / Scalar(modulus));
    return BasicCyclicMeasure(std::move(w), Unchecked{});
  }

  static BasicCyclicMeasure point_mass(std::uint64_t modulus, std::uint64_t residue) {
    check_modulus(modulus);
    Vector w = Vector::Zero(static_cast<Eigen::Index>(modulus));
    w[static_cast<Eigen::Index>(residue % modulus)] = Scalar(1);
    return BasicCyclicMeasure(std::move(w), Unchecked{});
  }

  /// Adopt weights produced by arithmetic on valid measures. Floating drift is
  /// repaired: tiny negative values are clamped, a sum off by more than
  /// kMassTolerance is renormalized, a sum off by more than kDriftLimit is an error.
  static BasicCyclicMeasure from_computed(Vector weights) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0) {
          if (weights[i] < -kDriftLimit) {
            throw NumericError("computed weight " + format_real(weights[i]) + " is negative");
          }
          weights[i] = 0;
        }
      }
      const double total = weights.sum();
      if (!std::isfinite(total) || std::abs(total - 1.0) > kDriftLimit) {
        throw NumericError("normalization drift: weights sum to " + format_real(total));
      }
      if (std::abs(total - 1.0) > kMassTolerance) weights /= total;
      return BasicCyclicMeasure(std::move(weights), Unchecked{});
    } else {
      return BasicCyclicMeasure(std::move(weights));
    }
  }

  std::uint64_t modulus() const { return static_cast<std::uint64_t>(weights_.size()); }
  const Vector& weights() const { return weights_; }
  const Scalar& operator[](std::uint64_t residue) const {
    return weights_[static_cast<Eigen::Index>(residue)];
  }

  BasicCyclicMeasure<double> to_double() const {
    Eigen::VectorXd w(weights_.size());
    for (Eigen::Index i = 0; i < weights_.size(); ++i) w[i] = circleconv::to_double(weights_[i]);
    return BasicCyclicMeasure<double>::from_computed(std::move(w));
  }

  friend bool operator==(const BasicCyclicMeasure& a, const BasicCyclicMeasure& b) {
    return a.weights_.size() == b.weights_.size() && a.weights_ == b.weights_;
  }

 private:
  struct Unchecked {};

  static void check_modulus(std::uint64_t modulus) {
    if (modulus == 0) throw std::invalid_argument("cyclic measure needs modulus >= 1");
    if constexpr (!std::is_floating_point_v<Scalar>) {
      if (modulus > Caps{}.exact_modulus) {
        throw std::invalid_argument("exact cyclic measures are limited to modulus " +
                                    std::to_string(Caps{}.exact_modulus));
      }
    }
  }
  BasicCyclicMeasure(Vector weights, Unchecked) : weights_(std::move(weights)) {}

  template <typename>
  friend class BasicCyclicMeasure;

  Vector weights_;
};

using CyclicMeasure = BasicCyclicMeasure<double>;
using ExactCyclicMeasure = BasicCyclicMeasure<Rational>;

/// A subgroup of Z/MZ. Cyclic groups have exactly one subgroup per divisor
/// of M, so the subgroup is identified by its generator d | M: {0, d, 2d, ...}.
class SubgroupHandle {
 public:
  SubgroupHandle(std::uint64_t modulus, std::uint64_t generator)
      : modulus_(modulus), generator_(generator) {
    if (modulus == 0) throw std::invalid_argument("subgroup of an empty group");
    if (generator == 0 || modulus % generator != 0) {
      throw std::invalid_argument("subgroup generator " + std::to_string(generator) +
                                  " does not divide " + std::to_string(modulus));
    }
  }

  static SubgroupHandle of_order(std::uint64_t modulus, std::uint64_t order) {
    if (order == 0 || modulus % order != 0) {
      throw std::invalid_argument("no subgroup of order " + std::to_string(order) + " in Z/" +
                                  std::to_string(modulus));
    }
    return {modulus, modulus / order};
  }
  static SubgroupHandle full(std::uint64_t modulus) { return {modulus, 1}; }
  static SubgroupHandle trivial(std::uint64_t modulus) { return {modulus, modulus}; }

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t generator() const { return generator_; }
  std::uint64_t order() const { return modulus_ / generator_; }
  /// Number of cosets; Z/M / G is identified with Z/index via x -> x mod index.
  std::uint64_t index() const { return generator_; }
  bool contains(std::uint64_t t) const { return (t % modulus_) % generator_ == 0; }

  friend bool operator==(const SubgroupHandle&, const SubgroupHandle&) = default;

 private:
  std::uint64_t modulus_;
  std::uint64_t generator_;
};

/// All subgroups of Z/modulus, by increasing order.
inline std::vector<SubgroupHandle> all_subgroups(std::uint64_t modulus) {
  std::vector<SubgroupHandle> out;
  for (std::uint64_t order = 1; order <= modulus; ++order) {
    if (modulus % order == 0) out.push_back(SubgroupHandle::of_order(modulus, order));
  }
  return out;
}

/// Order of t in Z/modulus: modulus / gcd(t, modulus).
inline std::uint64_t element_order(std::uint64_t t, std::uint64_t modulus) {
  return modulus / std::gcd(t % modulus, modulus);
}

// --- Convolution ------------------------------------------------------------

template <typename Scalar>
BasicCyclicMeasure<Scalar> convolve_direct(const BasicCyclicMeasure<Scalar>& a,
                                           const BasicCyclicMeasure<Scalar>& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("convolution of measures with moduli " + std::to_string(a.modulus()) +
                                " and " + std::to_string(b.modulus()));
  }
  using Vector = typename BasicCyclicMeasure<Scalar>::Vector;
  const Eigen::Index n = static_cast<Eigen::Index>(a.modulus());
  Vector out = Vector::Zero(n);
  const Vector& bw = b.weights();
  for (Eigen::Index s = 0; s < n; ++s) {
    const Scalar& as = a.weights()[s];
    if (as == Scalar(0)) continue;
    // residues s..n-1 receive b[0..n-s-1]; residues 0..s-1 wrap around.
    out.segment(s, n - s) += as * bw.head(n - s);
    if (s > 0) out.head(s) += as * bw.tail(s);
  }
  return BasicCyclicMeasure<Scalar>::from_computed(std::move(out));
}

CyclicMeasure convolve_fft(const CyclicMeasure& a, const CyclicMeasure& b);

/// Law of X + Y (mod N) for independent X ~ a, Y ~ b.
template <typename Scalar>
BasicCyclicMeasure<Scalar> convolve(const BasicCyclicMeasure<Scalar>& a,
                                    const BasicCyclicMeasure<Scalar>& b) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (a.modulus() == b.modulus() && a.modulus() > kDirectConvolutionLimit) return convolve_fft(a, b);
  }
  return convolve_direct(a, b);
}

/// Law of X_1 + ... + X_n for independent steps; a left fold of convolve.
template <typename Scalar>
BasicCyclicMeasure<Scalar> walk_distribution(std::span<const BasicCyclicMeasure<Scalar>> steps) {
  if (steps.empty()) throw std::invalid_argument("walk_distribution needs at least one step");
  BasicCyclicMeasure<Scalar> acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = convolve(acc, steps[i]);
  return acc;
}

template <typename Scalar>
BasicCyclicMeasure<Scalar> walk_distribution(const std::vector<BasicCyclicMeasure<Scalar>>& steps) {
  return walk_distribution(std::span<const BasicCyclicMeasure<Scalar>>(steps));
}

// --- Characters -------------------------------------------------------------

/// Coefficient l is sum_t a[t] exp(2 pi i l t / N).
Eigen::VectorXcd dft(const CyclicMeasure& a);

inline Eigen::VectorXcd dft(const ExactCyclicMeasure& a) { return dft(a.to_double()); }

// --- Entropy ----------------------------------------------------------------

/// Shannon entropy in nats, with 0 log 0 = 0.
template <typename Scalar>
double entropy(const BasicCyclicMeasure<Scalar>& a) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < a.weights().size(); ++i) {
    const double w = to_double(a.weights()[i]);
    if (w > 0.0) h -= w * std::log(w);
  }
  return std::max(h, 0.0);
}

/// Pushforward of a under x -> x mod G, as a measure on Z/index(G).
template <typename Scalar>
BasicCyclicMeasure<Scalar> coset_projection(const BasicCyclicMeasure<Scalar>& a, const SubgroupHandle& g) {
  if (g.modulus() != a.modulus()) throw std::invalid_argument("subgroup lives in a different group");
  using Vector = typename BasicCyclicMeasure<Scalar>::Vector;
  const std::uint64_t cosets = g.index();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(cosets));
  for (std::uint64_t x = 0; x < a.modulus(); ++x) out[static_cast<Eigen::Index>(x % cosets)] += a[x];
  return BasicCyclicMeasure<Scalar>::from_computed(std::move(out));
}

/// H(X | X mod G) = H(X) - H(X mod G), evaluated coset by coset so the result
/// is nonnegative term by term.
template <typename Scalar>
double conditional_entropy_mod(const BasicCyclicMeasure<Scalar>& a, const SubgroupHandle& g) {
  if (g.modulus() != a.modulus()) throw std::invalid_argument("subgroup lives in a different group");
  const auto cosets = coset_projection(a, g);
  double h = 0.0;
  for (std::uint64_t x = 0; x < a.modulus(); ++x) {
    const double w = to_double(a[x]);
    if (w <= 0.0) continue;
    const double m = to_double(cosets[x % g.index()]);
    h -= w * std::log(std::min(1.0, w / m));
  }
  return h;
}

/// sum_x min{a[x], a[x + g]}.
template <typename Scalar>
Scalar min_overlap(const BasicCyclicMeasure<Scalar>& a, std::uint64_t g) {
  const std::uint64_t n = a.modulus();
  if (g >= n) throw std::invalid_argument("shift " + std::to_string(g) + " is not a residue mod " + std::to_string(n));
  Scalar total(0);
  for (std::uint64_t x = 0; x < n; ++x) total += std::min(a[x], a[(x + g) % n]);
  return total;
}

/// Pushforward under z -> floor(z / p^(k-n)) from Z/p^k to Z/p^n: the n most
/// significant base-p digits.
template <typename Scalar>
BasicCyclicMeasure<Scalar> msd_projection(const BasicCyclicMeasure<Scalar>& a, std::uint64_t base, unsigned digits) {
  const auto k = exact_log(a.modulus(), base);
  if (!k) {
    throw std::invalid_argument("modulus " + std::to_string(a.modulus()) + " is not a power of " +
                                std::to_string(base));
  }
  if (digits > *k) throw std::invalid_argument("cannot keep more digits than the modulus has");
  using Vector = typename BasicCyclicMeasure<Scalar>::Vector;
  const std::uint64_t shift = *checked_pow(base, *k - digits);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(a.modulus() / shift));
  for (std::uint64_t z = 0; z < a.modulus(); ++z) out[static_cast<Eigen::Index>(z / shift)] += a[z];
  return BasicCyclicMeasure<Scalar>::from_computed(std::move(out));
}

/// Law of -X.
template <typename Scalar>
BasicCyclicMeasure<Scalar> reflect(const BasicCyclicMeasure<Scalar>& a) {
  using Vector = typename BasicCyclicMeasure<Scalar>::Vector;
  const std::uint64_t n = a.modulus();
  Vector out(static_cast<Eigen::Index>(n));
  for (std::uint64_t m = 0; m < n; ++m) out[static_cast<Eigen::Index>(m)] = a[(n - m) % n];
  return BasicCyclicMeasure<Scalar>::from_computed(std::move(out));
}

}  // namespace circleconv
