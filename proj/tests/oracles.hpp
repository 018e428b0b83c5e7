#pragma once

// Slow, independent reference computations. Nothing here calls the library
// except to convert inputs; every oracle uses plain loops over std types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Vec = std::vector<double>;

inline Vec convolve(const Vec& a, const Vec& b) {
  const std::size_t n = a.size();
  Vec out(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) out[(s + t) % n] += a[s] * b[t];
  return out;
}

inline double entropy(const Vec& a) {
  double h = 0.0;
  for (const double w : a)
    if (w > 0) h -= w * std::log(w);
  return h;
}

inline std::complex<double> dft_at(const Vec& a, long long l) {
  const double n = static_cast<double>(a.size());
  std::complex<double> acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((l * static_cast<long long>(t)) % static_cast<long long>(a.size())) / n;
    acc += a[t] * std::polar(1.0, angle);
  }
  return acc;
}

inline Vec random_law(std::size_t n, std::mt19937_64& rng, double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = u(rng) < sparsity ? 0.0 : u(rng);
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return w;
}

/// Entropy of the pushforward of `law` under m -> key(m).
template <typename Key>
double pushforward_entropy(const Vec& law, Key key) {
  std::map<std::uint64_t, double> mass;
  for (std::size_t m = 0; m < law.size(); ++m) mass[key(m)] += law[m];
  double h = 0.0;
  for (const auto& [k, w] : mass)
    if (w > 0) h -= w * std::log(w);
  return h;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// #{(k, l) : c_k = c_l} counted pair by pair.
inline std::uint64_t collision_pairs(const std::vector<Big>& terms, const Big& modulus) {
  std::uint64_t pairs = 0;
  std::vector<Big> r;
  for (const auto& c : terms) r.push_back(((c % modulus) + modulus) % modulus);
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t l = 0; l < r.size(); ++l) pairs += r[k] == r[l];
  return pairs;
}

/// Terms of c_{k+n} = -(a_{n-1} c_{k+n-1} + ... + a_0 c_k) for the monic
/// polynomial with descending coefficients (1, a_{n-1}, ..., a_0).
inline std::vector<Big> recursion_terms(const std::vector<Big>& descending, std::vector<Big> init, std::size_t count) {
  const std::size_t n = descending.size() - 1;
  while (init.size() < count) {
    Big next = 0;
    for (std::size_t i = 1; i <= n; ++i) next -= descending[i] * init[init.size() - i];
    init.push_back(next);
  }
  init.resize(count);
  return init;
}

inline unsigned nonzero_digits(std::uint64_t v, unsigned p) {
  unsigned c = 0;
  while (v) {
    c += v % p != 0;
    v /= p;
  }
  return c;
}

/// Words of length L over {0..p-1} (most significant first) with at most b
/// nonzero digits in every window of N consecutive digits.
inline bool admissible(std::uint64_t v, unsigned p, unsigned length, unsigned window, unsigned budget) {
  std::vector<int> d(length);
  for (unsigned i = 0; i < length; ++i) {
    d[length - 1 - i] = static_cast<int>(v % p) != 0;
    v /= p;
  }
  const unsigned w = std::min(window, length);
  for (unsigned s = 0; s + w <= length; ++s) {
    unsigned c = 0;
    for (unsigned i = s; i < s + w; ++i) c += d[i];
    if (c > budget) return false;
  }
  return true;
}

}  // namespace oracle
