#include "circleconv/convlab.hpp"

#include <cmath>
#include <unordered_map>

namespace circleconv {

namespace {

std::uint64_t low_modulus(const GridMeasure& mu, unsigned k) {
  if (k < 1 || k > mu.depth) {
    throw std::invalid_argument("digit count " + std::to_string(k) + " outside 1.." + std::to_string(mu.depth));
  }
  return *checked_pow(mu.base, mu.depth - k);
}

void check_top_subgroup(const GridMeasure& mu, unsigned k, const SubgroupHandle& g) {
  const std::uint64_t top = *checked_pow(mu.base, k);
  if (g.modulus() != top) {
    throw std::invalid_argument("subgroup lives in Z/" + std::to_string(g.modulus()) + ", expected Z/" +
                                std::to_string(top));
  }
}

void check_same_grid(const GridMeasure& a, const GridMeasure& b) {
  if (a.base != b.base || a.depth != b.depth) throw std::invalid_argument("grid measures on different grids");
}

}  // namespace

GridMeasure GridMeasure::from_law(unsigned base, CyclicMeasure law) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  const auto depth = exact_log(law.modulus(), base);
  if (!depth) {
    throw std::invalid_argument("modulus " + std::to_string(law.modulus()) + " is not a power of " +
                                std::to_string(base));
  }
  return {base, *depth, std::move(law)};
}

GridMeasure GridMeasure::from_digits(const DigitMeasure& m, unsigned depth, std::uint64_t grid_cap) {
  return {m.base(), depth, block_distribution(m, depth, grid_cap)};
}

GridMeasure convolve(const GridMeasure& a, const GridMeasure& b) {
  check_same_grid(a, b);
  return {a.base, a.depth, convolve(a.law, b.law)};
}

GridMeasure reflect(const GridMeasure& a) { return {a.base, a.depth, reflect(a.law)}; }

double residue_entropy(const CyclicMeasure& law, std::uint64_t r) {
  return entropy(coset_projection(law, SubgroupHandle(law.modulus(), r)));
}

double expected_I_k(const GridMeasure& mu, unsigned k) {
  const std::uint64_t low = low_modulus(mu, k);
  return std::max(0.0, entropy(mu.law) - residue_entropy(mu.law, low));
}

double expected_I_G(const GridMeasure& mu, unsigned k, const SubgroupHandle& g) {
  const std::uint64_t low = low_modulus(mu, k);
  check_top_subgroup(mu, k, g);
  // (top mod G, low) is the residue of m modulo index(G) p^(K-k).
  return conditional_entropy_mod(mu.law, SubgroupHandle(mu.modulus(), g.index() * low));
}

double expected_coset_entropy(const GridMeasure& mu, unsigned k, const SubgroupHandle& g) {
  const std::uint64_t low = low_modulus(mu, k);
  check_top_subgroup(mu, k, g);
  const auto fine = coset_projection(mu.law, SubgroupHandle(mu.modulus(), g.index() * low));
  return conditional_entropy_mod(fine, SubgroupHandle(fine.modulus(), low));
}

double expected_I_G_by_density(const GridMeasure& mu, unsigned k, const SubgroupHandle& g) {
  const std::uint64_t low = low_modulus(mu, k);
  check_top_subgroup(mu, k, g);
  const std::uint64_t n = mu.modulus();
  const std::uint64_t step = g.generator() * low;
  double total = 0.0;
  for (std::uint64_t m = 0; m < n; ++m) {
    const double w = mu.law[m];
    if (w <= 0.0) continue;
    double smeared = 0.0;
    for (std::uint64_t j = 0; j < g.order(); ++j) smeared += mu.law[(m + n - (j * step) % n) % n];
    total -= w * std::log(w / smeared);
  }
  return total;
}

InequalityCheck check_coset_entropy_growth(const GridMeasure& mu, const GridMeasure& nu, unsigned k, const SubgroupHandle& g) {
  InequalityCheck c;
  c.lhs = expected_coset_entropy(convolve(mu, nu), k, g);
  c.rhs = expected_coset_entropy(mu, k, g);
  c.holds = c.lhs >= c.rhs - kInequalitySlack;
  return c;
}

InequalityCheck check_information_drop(const GridMeasure& mu, const GridMeasure& nu, unsigned k, const SubgroupHandle& g) {
  const GridMeasure both = convolve(mu, nu);
  InequalityCheck c;
  c.lhs = expected_I_k(both, k) - expected_I_k(mu, k);
  c.rhs = expected_I_G(both, k, g) - expected_I_G(mu, k, g);
  c.holds = c.lhs >= c.rhs - kInequalitySlack;
  return c;
}

InequalityCheck top_digit_entropy_bound(const GridMeasure& mu, unsigned k, const SubgroupHandle& g, unsigned ell) {
  if (ell > k) throw std::invalid_argument("ell exceeds k");
  const auto needed = checked_pow(mu.base, ell);
  if (!needed || g.order() < *needed) {
    throw std::logic_error("subgroup of order " + std::to_string(g.order()) + " is smaller than p^" +
                           std::to_string(ell));
  }
  const double log_p = std::log(static_cast<double>(mu.base));
  InequalityCheck c;
  c.lhs = entropy(msd_projection(mu.law, mu.base, ell));
  c.rhs = (static_cast<double>(ell) - 1.0) * log_p - std::log(static_cast<double>(g.order())) +
          expected_I_G(mu, k, g);
  c.holds = c.lhs >= c.rhs - kInequalitySlack;
  return c;
}

double shift_distance(const GridMeasure& mu, unsigned k, std::uint64_t t) {
  const std::uint64_t low = low_modulus(mu, k);
  const std::uint64_t n = mu.modulus();
  const std::uint64_t shift = mulmod(t % (n / low), low, n);
  double total = 0.0;
  for (std::uint64_t m = 0; m < n; ++m) total += std::abs(mu.law[m] - mu.law[(m + n - shift) % n]);
  return 0.5 * total;
}

SubgroupHandle near_invariant_subgroup(const GridMeasure& mu, unsigned k, double tol) {
  low_modulus(mu, k);
  const std::uint64_t top = *checked_pow(mu.base, k);
  std::unordered_map<std::uint64_t, double> cache;
  auto distance = [&](std::uint64_t t) {
    auto [it, inserted] = cache.try_emplace(t, 0.0);
    if (inserted) it->second = shift_distance(mu, k, t);
    return it->second;
  };
  auto subgroups = all_subgroups(top);
  for (auto it = subgroups.rbegin(); it != subgroups.rend(); ++it) {
    bool ok = true;
    for (std::uint64_t j = 1; j < it->order() && ok; ++j) ok = distance(j * it->generator()) <= tol;
    if (ok) return *it;
  }
  return SubgroupHandle::trivial(top);
}

unsigned digit_floor(unsigned base, unsigned k) {
  const std::uint64_t smallest = prime_factors(base).front();
  const auto reach = checked_pow(smallest, k);
  if (!reach) throw CapExceeded("p_*^k does not fit in 63 bits");
  unsigned ell = 0;
  while (true) {
    const auto next = checked_pow(base, ell + 1);
    if (!next || *next > *reach) break;
    ++ell;
  }
  return ell;
}

std::vector<ExperimentRow> entropy_growth_experiment(std::span<const DigitMeasure> measures,
                                                  const ExperimentConfig& config) {
  if (measures.empty()) throw std::invalid_argument("experiment needs at least one measure");
  const unsigned p = measures.front().base();
  for (const auto& m : measures) {
    if (m.base() != p) throw std::invalid_argument("experiment measures have different bases");
  }
  const unsigned depth = config.depth;
  if (depth == 0) throw std::invalid_argument("depth must be at least 1");
  const unsigned k = config.report_k == 0 ? std::max(1u, depth / 2) : config.report_k;
  if (k > depth) throw std::invalid_argument("report_k exceeds the depth");
  const double log_p = std::log(static_cast<double>(p));
  const unsigned ell = digit_floor(p, k);

  std::vector<ExperimentRow> rows;
  rows.reserve(measures.size());
  GridMeasure acc;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const GridMeasure step = GridMeasure::from_digits(measures[i], depth, config.grid_cap);
    acc = i == 0 ? step : convolve(acc, step);

    ExperimentRow row;
    row.n = i + 1;
    row.h_norm = entropy(acc.law) / (depth * log_p);
    row.i_k_norm = expected_I_k(acc, k) / (k * log_p);
    row.ell_k = ell;
    const SubgroupHandle g = near_invariant_subgroup(acc, k, config.tol);
    row.subgroup_order = g.order();
    row.epsilon = std::max(0.0, std::log(static_cast<double>(g.order())) - expected_I_G(acc, k, g));
    row.top_entropy = ell == 0 ? 0.0 : entropy(msd_projection(acc.law, p, ell));
    row.top_bound = (static_cast<double>(ell) - 1.0) * log_p - (k + 1.0) * row.epsilon;
    row.bound_applies = ell > 0 && g.order() >= *checked_pow(p, ell);
    row.bound_holds = !row.bound_applies || row.top_entropy >= row.top_bound - kInequalitySlack;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace circleconv
