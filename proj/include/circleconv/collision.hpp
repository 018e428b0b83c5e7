#pragma once

// Collision exponents of integer sequences: brute-force pair counts modulo
// p^n and, for linear recursions, the exact reduced exponent.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circleconv/common.hpp"
#include "circleconv/polynomial.hpp"
#include "circleconv/sequence.hpp"

namespace circleconv {

/// #{0 <= k, l < p^n : c_k = c_l mod p^n}.
std::uint64_t collision_pairs(const SequenceSpec& seq, std::uint64_t base, unsigned level,
                              std::uint64_t count_cap = Caps{}.count);

struct LevelRecord {
  unsigned n = 0;
  std::uint64_t pairs = 0;
  double gamma = 0;  // log(pairs) / (n log p)
};

/// Levels 1..n_max from one pass over the first p^n_max terms.
std::vector<LevelRecord> gamma_estimates(const SequenceSpec& seq, std::uint64_t base, unsigned n_max,
                                         std::uint64_t count_cap = Caps{}.count);

/// Largest n with p^n within the counting cap.
unsigned largest_feasible_level(std::uint64_t base, std::uint64_t count_cap);

inline constexpr unsigned kDefaultRecursionDegree = 8;

/// Monic polynomial of least degree whose recursion annihilates every term
/// (Berlekamp-Massey over Q). The zero sequence gives f = 1. Requires the
/// degree L to satisfy 2L <= terms.size() so that f is determined.
RationalPolynomial minimal_recursion(std::span<const BigInt> terms, unsigned max_degree = kDefaultRecursionDegree);

struct IntertwineComponent {
  std::vector<BigInt> terms;
  RationalPolynomial poly;
  SequenceSpec spec;  // a recursion when poly is integral, else a table
};

/// Component r holds the terms c_{d k + r}.
std::vector<IntertwineComponent> intertwine_decompose(std::span<const BigInt> terms, unsigned d,
                                                      unsigned max_degree = kDefaultRecursionDegree);
std::vector<IntertwineComponent> intertwine_decompose(const SequenceSpec& seq, unsigned d, std::size_t term_count,
                                                      unsigned max_degree = kDefaultRecursionDegree);

/// 1 + log(u) / log(q) with 1 <= u <= q and u | q.
struct ExactExponent {
  std::uint64_t q = 2;
  std::uint64_t u = 1;

  double value() const;
  /// "1", "2" or "1 + log(u)/log(q)".
  std::string symbolic() const;
  friend bool operator==(const ExactExponent&, const ExactExponent&) = default;
};

struct TraceEntry {
  unsigned step = 0;
  unsigned depth = 0;
  std::string detail;
};

struct CollisionReport {
  /// "gamma" for brute-force estimates, "gamma_prime" for the algorithm.
  std::string object;
  std::uint64_t base = 0;
  std::vector<LevelRecord> levels;
  std::optional<RationalPolynomial> minimal_polynomial;
  std::optional<ExactExponent> exponent;
  bool lower_bound = false;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;
};

struct AlgorithmOptions {
  unsigned max_degree = kDefaultRecursionDegree;
  std::size_t term_count = 720;
  unsigned max_depth = 24;
};

/// Reduced q-adic collision exponent of a linear recursion sequence.
CollisionReport reduced_exponent(std::span<const BigInt> terms, std::uint64_t q, const AlgorithmOptions& options = {});
CollisionReport reduced_exponent(const SequenceSpec& seq, std::uint64_t q, const AlgorithmOptions& options = {});

struct KnownBound {
  enum class Kind { exact, upper, none };
  Kind kind = Kind::none;
  double value = 0;
  std::uint64_t prime = 0;  // the prime factor of p behind an upper bound
};

/// What is known about the p-adic collision exponent of q^n.
KnownBound known_bound_power(std::uint64_t p, std::uint64_t q);

}  // namespace circleconv
