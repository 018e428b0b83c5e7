#include "circleconv/sumset.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>

#include "circleconv/digit_measure.hpp"

namespace circleconv {

unsigned digit_budget(double beta, unsigned window) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  const double raw = std::floor(beta * window + 1e-9);
  return static_cast<unsigned>(std::min<double>(raw, window));
}

DigitSFT::DigitSFT(unsigned base, unsigned window, unsigned budget, std::uint64_t state_cap)
    : base_(base), window_(window), budget_(std::min(budget, window)) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  if (window > 63) throw std::invalid_argument("window is limited to 63 digits");
  const std::uint64_t state_mask = (std::uint64_t{1} << (window - 1)) - 1;
  const std::uint64_t window_mask = (state_mask << 1) | 1;

  std::unordered_map<std::uint64_t, std::int64_t> index{{0, 0}};
  states_.push_back(0);
  auto visit = [&](std::uint64_t pattern) -> std::int64_t {
    if (static_cast<unsigned>(std::popcount(pattern)) > budget_) return -1;
    const std::uint64_t next = pattern & state_mask;
    auto [it, inserted] = index.try_emplace(next, static_cast<std::int64_t>(states_.size()));
    if (inserted) {
      if (states_.size() >= state_cap) {
        throw CapExceeded("S(" + std::to_string(window) + ", " + std::to_string(budget) + "/" +
                          std::to_string(window) + ") has more than " + std::to_string(state_cap) +
                          " reachable states (the state cap)");
      }
      states_.push_back(next);
    }
    return it->second;
  };
  // Breadth-first over reachable patterns; bit 0 is the most recent digit.
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const std::uint64_t shifted = (states_[i] << 1) & window_mask;
    zero_.push_back(visit(shifted));
    nonzero_.push_back(visit(shifted | 1));
  }
}

DigitSFT DigitSFT::from_beta(unsigned base, unsigned window, double beta, std::uint64_t state_cap) {
  return DigitSFT(base, window, digit_budget(beta, window), state_cap);
}

ShiftEntropy topological_entropy(const DigitSFT& s) {
  const std::size_t n = s.state_count();
  const double weight = s.base() - 1.0;
  // The chain is irreducible (zeros lead back to the empty pattern) and
  // aperiodic (the empty pattern loops), so power iteration converges;
  // Collatz-Wielandt ratios bracket the spectral radius.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  Eigen::VectorXd w(v.size());
  double radius = 1.0;
  for (int iter = 0; iter < 2'000'000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      if (s.next_zero(i) >= 0) acc += v[s.next_zero(i)];
      if (s.next_nonzero(i) >= 0) acc += weight * v[s.next_nonzero(i)];
      w[static_cast<Eigen::Index>(i)] = acc;
    }
    const Eigen::ArrayXd ratio = w.array() / v.array();
    const double lo = ratio.minCoeff();
    const double hi = ratio.maxCoeff();
    radius = 0.5 * (lo + hi);
    v = w / w.maxCoeff();
    if (hi - lo <= 1e-12 * hi) {
      const double entropy = std::log(radius);
      return {entropy, entropy / std::log(static_cast<double>(s.base()))};
    }
  }
  throw NumericError("transfer-matrix power iteration did not converge");
}

double count_words(const DigitSFT& s, unsigned length) {
  const double weight = s.base() - 1.0;
  std::vector<double> current(s.state_count(), 0.0);
  std::vector<double> next(s.state_count());
  current[s.start()] = 1.0;
  for (unsigned step = 0; step < length; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i] == 0.0) continue;
      if (s.next_zero(i) >= 0) next[s.next_zero(i)] += current[i];
      if (s.next_nonzero(i) >= 0) next[s.next_nonzero(i)] += weight * current[i];
    }
    current.swap(next);
  }
  double total = 0.0;
  for (const double c : current) total += c;
  return total;
}

unsigned nonzero_digits(std::uint64_t value, unsigned base) {
  unsigned count = 0;
  for (; value > 0; value /= base) count += value % base != 0;
  return count;
}

bool word_admissible(std::uint64_t value, unsigned base, unsigned length, unsigned window, unsigned budget) {
  std::vector<bool> nonzero(length);
  for (unsigned i = length; i-- > 0; value /= base) nonzero[i] = value % base != 0;
  const unsigned w = std::min(window, length);
  unsigned inside = 0;
  for (unsigned i = 0; i < length; ++i) {
    inside += nonzero[i];
    if (i >= w) inside -= nonzero[i - w];
    if (i + 1 >= w && inside > budget) return false;
  }
  return true;
}

std::uint64_t count_words_brute_force(unsigned base, unsigned window, unsigned budget, unsigned length) {
  const auto total = checked_pow(base, length);
  if (!total || *total > Caps{}.exhaustive) throw CapExceeded("brute-force word count exceeds the exhaustive cap");
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < *total; ++v) count += word_admissible(v, base, length, window, budget);
  return count;
}

std::vector<std::uint64_t> admissible_words(unsigned base, unsigned length, unsigned window, unsigned budget) {
  if (!checked_pow(base, length)) throw CapExceeded("words of this length do not fit in 63 bits");
  // Depth-first in increasing digit order, tracking the nonzero pattern of the last window digits.
  std::vector<std::uint64_t> out;
  std::vector<bool> nonzero(length);
  auto recurse = [&](auto&& self, unsigned pos, std::uint64_t value, unsigned inside) -> void {
    if (pos == length) {
      out.push_back(value);
      return;
    }
    const unsigned leaving = pos >= window && nonzero[pos - window] ? 1 : 0;
    for (unsigned d = 0; d < base; ++d) {
      const unsigned now = inside - leaving + (d != 0);
      if (now > budget) continue;
      nonzero[pos] = d != 0;
      self(self, pos + 1, value * base + d, now);
    }
  };
  recurse(recurse, 0, 0, 0);
  return out;
}

ContainmentResult sumset_containment_check(unsigned n, double beta, unsigned m, double beta_prime, unsigned base,
                                           unsigned length, std::uint64_t exhaustive_cap) {
  if (n == 0 || m == 0 || m % n != 0) throw std::invalid_argument("the first window must divide the second");
  if (length == 0 || length % m != 0) throw std::invalid_argument("word length must be a positive multiple of M");
  const auto modulus = checked_pow(base, length);
  if (!modulus) throw CapExceeded("words of this length do not fit in 63 bits");

  const auto xs = admissible_words(base, length, n, digit_budget(beta, n));
  const auto ys = admissible_words(base, length, m, digit_budget(beta_prime, m));
  const long double work = static_cast<long double>(base) * xs.size() * ys.size();
  if (work > static_cast<long double>(exhaustive_cap)) {
    throw CapExceeded("containment check needs " + std::to_string(static_cast<std::uint64_t>(work)) +
                      " sums, over the exhaustive cap of " + std::to_string(exhaustive_cap));
  }
  ContainmentResult result;
  result.target_budget = digit_budget(beta + beta_prime + 1.0 / m, m);
  std::vector<bool> target;
  if (*modulus <= (std::uint64_t{1} << 26)) {
    target.resize(*modulus);
    for (const auto z : admissible_words(base, length, m, result.target_budget)) target[z] = true;
  }
  auto in_target = [&](std::uint64_t z) {
    return target.empty() ? word_admissible(z, base, length, m, result.target_budget) : bool(target[z]);
  };
  for (const auto x : xs) {
    for (const auto y : ys) {
      for (unsigned offset = 0; offset < base; ++offset) {
        const std::uint64_t z = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) + y + offset) % *modulus);
        ++result.pairs_checked;
        if (!in_target(z)) {
          result.holds = false;
          result.witness = ContainmentWitness{x, y, offset, z};
          return result;
        }
      }
    }
  }
  return result;
}

PipelineReport dimension_gap_pipeline(std::span<const double> dims, double eps, unsigned base,
                                     std::uint64_t state_cap) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double log_p = std::log(static_cast<double>(base));
  const double top_beta = 1.0 - 1.0 / base;
  constexpr unsigned kMultiples = 8;

  PipelineReport report;
  report.base = base;
  report.eps = eps;
  unsigned previous = 1;
  bool all_found = true;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const double d = dims[i];
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("dimensions must lie in (0, 1)");
    PipelineEntry entry;
    entry.d = d;
    const double floor_window = std::ldexp(1.0, static_cast<int>(i + 1)) / eps;
    const auto first = static_cast<unsigned>(std::ceil(floor_window / previous - 1e-9));
    for (unsigned c = std::max(first, 1u); c < std::max(first, 1u) + kMultiples && !entry.found; ++c) {
      const unsigned window = c * previous;
      if (window > 63) break;
      for (unsigned b = 0; b <= window; ++b) {
        const double beta = static_cast<double>(b) / window;
        if (beta > top_beta) break;
        ShiftEntropy h;
        try {
          h = topological_entropy(DigitSFT(base, window, b, state_cap));
        } catch (const CapExceeded&) {
          break;
        }
        if (h.dimension >= (1.0 + eps) * d) break;
        const double measure_dim = psi(beta, base) / log_p;
        // Only d < dim < (1 + eps) d is required; the measure window is reported.
        if (h.dimension > d) {
          entry.found = true;
          entry.window = window;
          entry.budget = b;
          entry.beta = beta;
          entry.dimension = h.dimension;
          entry.measure_dimension = measure_dim;
          entry.measure_in_window = measure_dim > (1.0 - eps) * d && measure_dim < (1.0 + eps) * d;
          break;
        }
      }
    }
    if (entry.found) {
      previous = entry.window;
      report.sum_beta += entry.beta;
    } else {
      all_found = false;
      entry.note = "no (N, beta) within the state cap meets the dimension window";
    }
    report.entries.push_back(entry);
  }
  report.condition_holds = all_found && report.sum_beta < 1.0 - eps;
  const double level = eps + report.sum_beta;
  report.bound_dim = level >= top_beta ? 1.0 : psi(level, base) / log_p;
  report.vacuous = !report.condition_holds || report.bound_dim >= 1.0;
  if (all_found && !report.entries.empty()) {
    try {
      report.shift_bound_dim = topological_entropy(DigitSFT::from_beta(base, previous, std::min(level, 1.0), state_cap)).dimension;
    } catch (const CapExceeded&) {
    }
  }
  return report;
}

}  // namespace circleconv
