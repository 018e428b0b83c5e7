#include "circleconv/digit_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace circleconv {

namespace {

constexpr double kRowTolerance = 1e-12;

void check_law(const Eigen::VectorXd& law, const std::string& what) {
  if (law.size() < 2) throw std::invalid_argument(what + ": a digit law needs base >= 2");
  for (Eigen::Index i = 0; i < law.size(); ++i) {
    if (!std::isfinite(law[i]) || law[i] < 0) throw std::invalid_argument(what + ": negative or non-finite weight");
  }
  if (std::abs(law.sum() - 1.0) > kRowTolerance) {
    throw std::invalid_argument(what + ": weights sum to " + format_real(law.sum()));
  }
}

bool is_uniform_law(const Eigen::VectorXd& law) {
  const double u = 1.0 / static_cast<double>(law.size());
  return (law.array() - u).abs().maxCoeff() <= kRowTolerance;
}

// Number of closed communicating classes of the transition graph.
int closed_classes(const Eigen::MatrixXd& p) {
  const Eigen::Index n = p.rows();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Eigen::Index i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (p(i, j) > 0) reach[i][j] = true;
    }
  }
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      if (reach[i][k])
        for (Eigen::Index j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  // i is in a closed class iff everything reachable from i reaches back.
  std::vector<bool> seen(n, false);
  int classes = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[i]) continue;
    bool closed = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (reach[i][j] && !reach[j][i]) closed = false;
    }
    if (!closed) continue;
    ++classes;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (reach[i][j]) seen[j] = true;
    }
  }
  return classes;
}

Eigen::VectorXd stationary_law(const Eigen::MatrixXd& p) {
  if (closed_classes(p) != 1) {
    throw std::invalid_argument("Markov chain has more than one stationary law (reducible)");
  }
  const Eigen::Index n = p.rows();
  // The lazy chain (I + P) / 2 has the same stationary law and is aperiodic.
  const Eigen::MatrixXd lazy = 0.5 * (Eigen::MatrixXd::Identity(n, n) + p);
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 10'000'000; ++iter) {
    Eigen::RowVectorXd next = pi * lazy;
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().sum();
    pi = std::move(next);
    if (change < 1e-15) break;
  }
  const double residual = (pi * p - pi).cwiseAbs().maxCoeff();
  if (residual > 1e-10) throw NumericError("stationary law did not converge (residual " + format_real(residual) + ")");
  return pi.transpose();
}

std::uint64_t checked_grid(unsigned base, unsigned digits, std::uint64_t cap) {
  const auto size = checked_pow(base, digits);
  if (!size || *size > cap) {
    throw CapExceeded("block of " + std::to_string(digits) + " base-" + std::to_string(base) +
                      " digits exceeds the grid cap of " + std::to_string(cap) + " entries");
  }
  return *size;
}

std::size_t draw(const Eigen::VectorXd& law, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < law.size(); ++i) {
    acc += law[i];
    if (u < acc) return static_cast<std::size_t>(i);
  }
  // u landed in the rounding gap above the cumulative sum: take the last positive weight.
  for (Eigen::Index i = law.size() - 1; i >= 0; --i) {
    if (law[i] > 0) return static_cast<std::size_t>(i);
  }
  return 0;
}

}  // namespace

bool ProductRule::is_fixed(std::uint64_t position) const {
  if (squares) {
    const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(position))));
    for (std::uint64_t c = (r > 0 ? r - 1 : 0); c <= r + 1; ++c) {
      if (c > 0 && c * c == position) return true;
    }
    return false;
  }
  return std::binary_search(fixed_positions.begin(), fixed_positions.end(), position);
}

bool ProductRule::is_constant() const {
  const bool no_fixed = !squares && fixed_positions.empty();
  if (no_fixed) return true;
  // Every position carries the same law iff `other` is the point mass at `digit`.
  return other[digit] == 1.0;
}

Eigen::VectorXd ProductRule::law_at(std::uint64_t position) const {
  if (!is_fixed(position)) return other;
  Eigen::VectorXd law = Eigen::VectorXd::Zero(other.size());
  law[digit] = 1.0;
  return law;
}

DigitMeasure DigitMeasure::bernoulli(Eigen::VectorXd weights) {
  check_law(weights, "bernoulli");
  const auto base = static_cast<unsigned>(weights.size());
  return {base, Bernoulli{std::move(weights)}};
}

DigitMeasure DigitMeasure::bernoulli_beta(unsigned base, double beta) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(base, beta / (base - 1));
  w[0] = 1.0 - beta;
  return bernoulli(std::move(w));
}

DigitMeasure DigitMeasure::uniform(unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  return bernoulli(Eigen::VectorXd::Constant(base, 1.0 / base));
}

DigitMeasure DigitMeasure::markov(Eigen::MatrixXd transition) {
  if (transition.rows() != transition.cols()) throw std::invalid_argument("markov: transition matrix is not square");
  for (Eigen::Index i = 0; i < transition.rows(); ++i) {
    check_law(transition.row(i).transpose(), "markov row " + std::to_string(i));
  }
  Eigen::VectorXd pi = stationary_law(transition);
  const auto base = static_cast<unsigned>(transition.rows());
  return {base, Markov{std::move(transition), std::move(pi)}};
}

DigitMeasure DigitMeasure::product(unsigned base, ProductRule rule) {
  if (rule.other.size() != static_cast<Eigen::Index>(base)) {
    throw std::invalid_argument("product: law of free digits must have p entries");
  }
  check_law(rule.other, "product");
  if (rule.digit >= base) throw std::invalid_argument("product: fixed digit out of range");
  std::sort(rule.fixed_positions.begin(), rule.fixed_positions.end());
  if (!rule.fixed_positions.empty() && rule.fixed_positions.front() == 0) {
    throw std::invalid_argument("product: digit positions are 1-based");
  }
  return {base, std::move(rule)};
}

bool DigitMeasure::is_invariant() const {
  if (const auto* rule = std::get_if<ProductRule>(&kind_)) return rule->is_constant();
  return true;
}

bool DigitMeasure::is_uniform() const {
  if (const auto* b = std::get_if<Bernoulli>(&kind_)) return is_uniform_law(b->weights);
  if (const auto* rule = std::get_if<ProductRule>(&kind_)) {
    return !rule->squares && rule->fixed_positions.empty() && is_uniform_law(rule->other);
  }
  const auto& mk = std::get<Markov>(kind_);
  for (Eigen::Index i = 0; i < mk.transition.rows(); ++i) {
    if (!is_uniform_law(mk.transition.row(i).transpose())) return false;
  }
  return true;
}

double shannon_entropy(const Eigen::VectorXd& law) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < law.size(); ++i) {
    if (law[i] > 0) h -= law[i] * std::log(law[i]);
  }
  return std::max(h, 0.0);
}

double entropy_rate(const DigitMeasure& m) {
  return std::visit(
      [&](const auto& kind) -> double {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, Bernoulli>) {
          return shannon_entropy(kind.weights);
        } else if constexpr (std::is_same_v<K, Markov>) {
          double h = 0.0;
          for (Eigen::Index i = 0; i < kind.transition.rows(); ++i) {
            h += kind.stationary[i] * shannon_entropy(kind.transition.row(i).transpose());
          }
          return h;
        } else {
          if (!kind.is_constant()) {
            throw std::domain_error("entropy rate is undefined for a position-dependent product measure");
          }
          const bool no_fixed = !kind.squares && kind.fixed_positions.empty();
          return no_fixed ? shannon_entropy(kind.other) : 0.0;
        }
      },
      m.kind());
}

double psi(double beta, unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  const double top = 1.0 - 1.0 / base;
  if (!(beta >= 0.0 && beta <= top + 1e-15)) {
    throw std::invalid_argument("psi: beta " + format_real(beta) + " outside [0, 1 - 1/p]");
  }
  beta = std::min(beta, top);
  double h = 0.0;
  if (beta < 1.0) h -= (1.0 - beta) * std::log1p(-beta);
  if (beta > 0.0) h -= beta * std::log(beta / (base - 1));
  return h;
}

double psi_inv(double h, unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  const double log_p = std::log(static_cast<double>(base));
  if (!(h >= 0.0 && h <= log_p + 1e-15)) {
    throw std::invalid_argument("psi_inv: h " + format_real(h) + " outside [0, log p]");
  }
  double lo = 0.0;
  double hi = 1.0 - 1.0 / base;
  // psi is flat at the top, so compare against its computed maximum.
  if (h <= 0.0) return 0.0;
  if (h >= std::min(log_p, psi(hi, base))) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (psi(mid, base) < h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PsiInverseBound psi_inverse_bound(unsigned base) {
  const double log_p = std::log(static_cast<double>(base));
  return {1.0 / (4.0 * log_p), 0.1 * log_p};
}

CyclicMeasure block_distribution(const DigitMeasure& m, unsigned digits, std::uint64_t grid_cap) {
  if (digits == 0) throw std::invalid_argument("block_distribution needs at least one digit");
  const unsigned p = m.base();
  const std::uint64_t size = checked_grid(p, digits, grid_cap);
  Eigen::VectorXd law = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  Eigen::VectorXd next(law.size());

  // law holds the first `depth` digits as an integer in [0, p^depth).
  std::uint64_t cells = 1;
  law[0] = 1.0;
  for (unsigned depth = 1; depth <= digits; ++depth) {
    next.head(static_cast<Eigen::Index>(cells * p)).setZero();
    std::visit(
        [&](const auto& kind) {
          using K = std::decay_t<decltype(kind)>;
          for (std::uint64_t c = 0; c < cells; ++c) {
            const double mass = law[static_cast<Eigen::Index>(c)];
            if (mass == 0.0) continue;
            for (unsigned d = 0; d < p; ++d) {
              double w;
              if constexpr (std::is_same_v<K, Bernoulli>) {
                w = kind.weights[d];
              } else if constexpr (std::is_same_v<K, Markov>) {
                w = depth == 1 ? kind.stationary[d] : kind.transition(static_cast<Eigen::Index>(c % p), d);
              } else {
                w = kind.is_fixed(depth) ? (d == kind.digit ? 1.0 : 0.0) : kind.other[d];
              }
              next[static_cast<Eigen::Index>(c * p + d)] = mass * w;
            }
          }
        },
        m.kind());
    cells *= p;
    law.head(static_cast<Eigen::Index>(cells)) = next.head(static_cast<Eigen::Index>(cells));
  }
  return CyclicMeasure::from_computed(std::move(law));
}

ConvolutionBlock convolution_block(std::span<const DigitMeasure> measures, unsigned digits, double tol,
                                   std::uint64_t grid_cap) {
  if (measures.empty()) throw std::invalid_argument("convolution_block needs at least one measure");
  if (!(tol > 0)) throw std::invalid_argument("convolution_block needs tol > 0");
  const unsigned p = measures.front().base();
  for (const auto& m : measures) {
    if (m.base() != p) throw std::invalid_argument("convolution_block: measures have different bases");
  }
  // Convolving with Lebesgue measure gives Lebesgue measure exactly.
  for (const auto& m : measures) {
    if (m.is_uniform()) {
      return {CyclicMeasure::uniform(checked_grid(p, digits, grid_cap)), 0.0, 0};
    }
  }
  const std::uint64_t n = measures.size();
  double best = 1.0;
  for (unsigned buffer = 0;; ++buffer) {
    const auto size = checked_pow(p, digits + buffer);
    if (!size || *size > grid_cap) {
      throw CapExceeded("carry bound cannot reach tol " + format_real(tol) + " within the grid cap of " +
                        std::to_string(grid_cap) + " entries; best achievable bound " + format_real(best));
    }
    CyclicMeasure law = block_distribution(measures.front(), digits + buffer, grid_cap);
    for (std::size_t i = 1; i < measures.size(); ++i) {
      law = convolve(law, block_distribution(measures[i], digits + buffer, grid_cap));
    }
    const std::uint64_t low = *checked_pow(p, buffer);
    double bound = 0.0;
    for (std::uint64_t m = 0; m < law.modulus(); ++m) {
      if (m % low + n >= low) bound += law[m];
    }
    bound = std::min(bound, 1.0);
    best = std::min(best, bound);
    if (bound <= tol) return {msd_projection(law, p, digits), bound, buffer};
  }
}

std::complex<double> fourier_coefficient(const DigitMeasure& m, std::int64_t freq, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("fourier_coefficient needs tol > 0");
  if (std::holds_alternative<Markov>(m.kind())) {
    throw std::domain_error("Fourier coefficients of Markov measures are not supported");
  }
  if (freq == 0) return {1.0, 0.0};
  const unsigned p = m.base();
  const long double magnitude = std::abs(static_cast<long double>(freq));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;

  // Tail sum_{j>J} 2 pi |freq| p^-j = 2 pi |freq| p^-J / (p - 1).
  unsigned positions = 0;
  long double tail = two_pi * magnitude / (p - 1);
  while (tail >= tol) {
    tail /= p;
    ++positions;
  }

  std::complex<long double> product(1.0L, 0.0L);
  for (unsigned j = 1; j <= positions; ++j) {
    Eigen::VectorXd law;
    if (const auto* b = std::get_if<Bernoulli>(&m.kind())) {
      law = b->weights;
    } else {
      law = std::get<ProductRule>(m.kind()).law_at(j);
    }
    const auto scale = checked_pow(p, j);
    std::complex<long double> factor(0.0L, 0.0L);
    for (unsigned d = 0; d < p; ++d) {
      if (law[d] == 0.0) continue;
      long double phase;
      if (scale) {
        const std::uint64_t r = mulmod(reduce_mod(freq, *scale), d, *scale);
        phase = static_cast<long double>(r) / static_cast<long double>(*scale);
      } else {
        phase = static_cast<long double>(freq) * d / std::pow(static_cast<long double>(p), j);
      }
      factor += static_cast<long double>(law[d]) * std::polar(1.0L, two_pi * phase);
    }
    product *= factor;
  }
  return {static_cast<double>(product.real()), static_cast<double>(product.imag())};
}

std::uint64_t DigitString::index() const {
  const auto limit = checked_pow(base, static_cast<unsigned>(digits.size()));
  if (!limit) throw CapExceeded("digit string too long for a 63-bit grid index");
  std::uint64_t x = 0;
  for (const auto d : digits) x = x * base + d;
  return x;
}

double DigitString::value() const {
  long double x = 0.0L;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = (x + *it) / base;
  return static_cast<double>(x);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer applied to a mix of the two words.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DigitString sample(const DigitMeasure& m, unsigned digits, std::mt19937_64& rng) {
  if (digits == 0) throw std::invalid_argument("sample needs at least one digit");
  DigitString out{m.base(), std::vector<std::uint8_t>(digits)};
  std::visit(
      [&](const auto& kind) {
        using K = std::decay_t<decltype(kind)>;
        for (unsigned j = 0; j < digits; ++j) {
          std::size_t d;
          if constexpr (std::is_same_v<K, Bernoulli>) {
            d = draw(kind.weights, rng);
          } else if constexpr (std::is_same_v<K, Markov>) {
            d = j == 0 ? draw(kind.stationary, rng) : draw(kind.transition.row(out.digits[j - 1]).transpose(), rng);
          } else {
            d = kind.is_fixed(j + 1) ? kind.digit : draw(kind.other, rng);
          }
          out.digits[j] = static_cast<std::uint8_t>(d);
        }
      },
      m.kind());
  return out;
}

DigitString sample(const DigitMeasure& m, unsigned digits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample(m, digits, rng);
}

CounterexampleFamily counterexample_family(std::span<const double> normalized_entropies, unsigned base,
                                           double tol) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  CounterexampleFamily family;
  const double log_p = std::log(static_cast<double>(base));
  double weighted_sum = 0.0;
  long double direct = 1.0L;
  for (const double h : normalized_entropies) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("normalized entropies must lie in (0, 1)");
    const double beta = psi_inv(h * log_p, base);
    family.betas.push_back(beta);
    family.measures.push_back(DigitMeasure::bernoulli_beta(base, beta));
    const auto coefficient = fourier_coefficient(family.measures.back(), 1, tol);
    family.first_coefficients.push_back(coefficient);
    direct *= std::abs(coefficient);
    weighted_sum += 4.0 * std::numbers::pi * beta;
  }
  if (weighted_sum < 1.0) {
    long double bound = 1.0L;
    for (const double beta : family.betas) bound *= 1.0L - 4.0L * std::numbers::pi_v<long double> * beta;
    family.bound = static_cast<double>(bound);
  } else {
    family.used_direct_product = true;
    family.bound = static_cast<double>(direct);
    if (!(family.bound > 1e-300)) {
      family.warning = "product of |mu_i^(1)| underflows; no positive lower bound is certified";
    }
  }
  return family;
}

}  // namespace circleconv
