#include "circleconv/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace circleconv {

Caps Caps::from_environment() {
  Caps caps;
  if (const char* raw = std::getenv("CIRCLE_CONV_CAP"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0) {
      throw std::invalid_argument(std::string("CIRCLE_CONV_CAP is not a positive integer: ") + raw);
    }
    caps.grid = value;
    caps.count = value;
  }
  return caps;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exponent) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && result > (limit - 1) / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::optional<unsigned> exact_log(std::uint64_t n, std::uint64_t base) {
  if (base < 2 || n == 0) return std::nullopt;
  unsigned k = 0;
  while (n % base == 0) {
    n /= base;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mod(std::int64_t value, std::uint64_t m) {
  if (value >= 0) return static_cast<std::uint64_t>(value) % m;
  // -(value+1) avoids overflow at INT64_MIN.
  const std::uint64_t neg = (static_cast<std::uint64_t>(-(value + 1)) + 1) % m;
  return neg == 0 ? 0 : m - neg;
}

std::uint64_t reduce_mod(const BigInt& value, std::uint64_t m) {
  BigInt r = value % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n;
  for (const auto f : prime_factors(n)) result = result / f * (f - 1);
  return result;
}

std::string format_real(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_real(value).c_str(), nullptr);
}

}  // namespace circleconv
