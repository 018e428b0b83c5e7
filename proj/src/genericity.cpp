#include "circleconv/genericity.hpp"

#include <cmath>
#include <numbers>

#include <boost/multiprecision/integer.hpp>

namespace circleconv {

namespace {

std::complex<double> character(std::uint64_t a, std::uint64_t b) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(a) / static_cast<long double>(b);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

// k c_n mod modulus for n < N.
std::vector<std::uint64_t> frequencies(const WeylAverage& w, std::uint64_t modulus) {
  auto r = residues(w.seq, w.terms, modulus);
  const std::uint64_t k = reduce_mod(w.k, modulus);
  for (auto& v : r) v = mulmod(v, k, modulus);
  return r;
}

}  // namespace

void validate(const WeylAverage& w) {
  if (w.k == 0) throw std::invalid_argument("frequency k must be nonzero");
  if (w.terms == 0) throw std::invalid_argument("N must be at least 1");
  validate(w.seq);
}

TorusPoint grid_point(const DigitString& x) {
  const auto denominator = checked_pow(x.base, static_cast<unsigned>(x.digits.size()));
  if (!denominator) throw CapExceeded("digit string too long for a 63-bit grid index");
  return {x.index(), *denominator};
}

std::complex<double> g_value(const WeylAverage& w, const TorusPoint& x) {
  validate(w);
  if (x.denominator == 0) throw std::invalid_argument("point has zero denominator");
  const std::uint64_t b = x.denominator;
  const std::uint64_t a = x.numerator % b;
  std::complex<long double> acc(0.0L, 0.0L);
  for (const auto r : frequencies(w, b)) {
    const std::complex<double> e = character(mulmod(r, a, b), b);
    acc += std::complex<long double>(e.real(), e.imag());
  }
  acc /= static_cast<long double>(w.terms);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::complex<double> mean_g(const GridMeasure& mu, const WeylAverage& w) {
  validate(w);
  const Eigen::VectorXcd coefficients = dft(mu.law);
  std::complex<double> acc(0.0, 0.0);
  for (const auto r : frequencies(w, mu.modulus())) acc += coefficients[static_cast<Eigen::Index>(r)];
  return acc / static_cast<double>(w.terms);
}

double second_moment_g(const GridMeasure& mu, const WeylAverage& w) {
  validate(w);
  // The law of k c_n (n uniform below N) has dft g_N(x / M) at x.
  const std::uint64_t m = mu.modulus();
  Eigen::VectorXd histogram = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (const auto r : frequencies(w, m)) histogram[static_cast<Eigen::Index>(r)] += 1.0;
  histogram /= static_cast<double>(w.terms);
  const Eigen::VectorXcd g = dft(CyclicMeasure::from_computed(std::move(histogram)));
  double total = 0.0;
  for (std::uint64_t x = 0; x < m; ++x) total += mu.law[x] * std::norm(g[static_cast<Eigen::Index>(x)]);
  return total;
}

InequalityCheck reflection_moment_check(const GridMeasure& mu, const WeylAverage& w) {
  InequalityCheck c;
  c.lhs = second_moment_g(mu, w);
  c.rhs = std::sqrt(std::max(0.0, second_moment_g(convolve(mu, reflect(mu)), w)));
  c.holds = c.lhs <= c.rhs + kInequalitySlack;
  return c;
}

RhoStar rho_star(const GridMeasure& mu, const GridMeasure& nu, unsigned k_max) {
  if (mu.modulus() != nu.modulus()) throw std::invalid_argument("grid measures on different grids");
  const Eigen::VectorXcd a = dft(mu.law);
  const Eigen::VectorXcd b = dft(nu.law);
  const std::uint64_t m = mu.modulus();
  double total = 0.0;
  for (unsigned k = 1; k <= k_max; ++k) {
    const auto plus = static_cast<Eigen::Index>(k % m);
    const auto minus = static_cast<Eigen::Index>((m - k % m) % m);
    const double weight = std::ldexp(1.0, -static_cast<int>(k));
    total += weight * (std::norm(a[plus] - b[plus]) + std::norm(a[minus] - b[minus]));
  }
  // |mu^(k) - nu^(k)|^2 <= 4 and sum_{|k| > k_max} 2^-|k| = 2^(1 - k_max).
  return {total, std::ldexp(1.0, 3 - static_cast<int>(k_max))};
}

NormalityEstimate normality_estimate(const DigitMeasure& m, const WeylAverage& w, std::uint64_t samples,
                                     std::uint64_t seed, unsigned guard) {
  validate(w);
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const unsigned p = m.base();

  // Largest |k c_n| for n < N, from exact terms.
  BigInt reach = 1;
  const BigInt k_abs = w.k < 0 ? BigInt(-BigInt(w.k)) : BigInt(w.k);
  std::vector<BigInt> terms;
  try {
    terms = exact_terms(w.seq, w.terms, 4096);
  } catch (const CapExceeded&) {
    throw CapExceeded("sequence terms are too large to resolve with a 63-bit sampling grid");
  }
  for (const auto& c : terms) {
    const BigInt v = k_abs * (c < 0 ? BigInt(-c) : c);
    if (v > reach) reach = v;
  }
  unsigned depth = guard;
  BigInt scale = 1;
  while (scale < reach) {
    scale *= p;
    ++depth;
  }
  depth = std::max(depth, 1u);
  const auto denominator = checked_pow(p, depth);
  if (!denominator) {
    throw CapExceeded("sampling depth " + std::to_string(depth) + " in base " + std::to_string(p) +
                      " exceeds the 63-bit sampler cap");
  }
  const auto freq = frequencies(w, *denominator);

  // Chunked sampling with per-chunk seeds, merged in chunk order.
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    std::mt19937_64 rng(derive_seed(seed, chunk));
    const std::uint64_t count = std::min(kSampleChunk, samples - chunk * kSampleChunk);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t x = sample(m, depth, rng).index();
      std::complex<long double> g(0.0L, 0.0L);
      for (const auto r : freq) {
        const auto e = character(mulmod(r, x, *denominator), *denominator);
        g += std::complex<long double>(e.real(), e.imag());
      }
      const long double value = std::norm(g) / (static_cast<long double>(w.terms) * w.terms);
      sum += value;
      sum_sq += value * value;
    }
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = sum / n;
  const long double variance = samples > 1 ? std::max(0.0L, (sum_sq - n * mean * mean) / (n - 1)) : 0.0L;
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(variance / n)), depth, samples, seed};
}

}  // namespace circleconv
