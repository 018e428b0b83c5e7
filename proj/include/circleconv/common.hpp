#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace circleconv {

// Expression templates are disabled so the multiprecision types can be used
// as Eigen scalars and inside std containers without surprises.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Raised when a request exceeds a configured size cap (grid, count table,
/// state space, exhaustive enumeration).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a floating computation drifts outside its stated tolerance or
/// an iteration fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size caps shared by the modules. The CIRCLE_CONV_CAP environment variable
/// overrides both the grid and the counting cap.
struct Caps {
  std::uint64_t grid = std::uint64_t{1} << 20;    // entries of a grid law
  std::uint64_t count = 10'000'000;               // terms in a collision count
  std::uint64_t sft_states = std::uint64_t{1} << 17;
  std::uint64_t exhaustive = 10'000'000;          // word pairs in sum-set checks
  std::uint64_t exact_modulus = 4096;             // exact-rational cyclic measures

  static Caps from_environment();
};

// Integer helpers.

/// p^k, or nullopt when it does not fit in 63 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exponent);

/// k with base^k == n, or nullopt.
std::optional<unsigned> exact_log(std::uint64_t n, std::uint64_t base);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Reduce a signed integer into [0, m).
std::uint64_t reduce_mod(std::int64_t value, std::uint64_t m);
std::uint64_t reduce_mod(const BigInt& value, std::uint64_t m);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);

/// Format with 12 significant digits, the precision used for all emitted output.
std::string format_real(double value);

/// Round a double to 12 significant digits.
double round12(double value);

}  // namespace circleconv
