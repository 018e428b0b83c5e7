#pragma once

// Declarative integer sequences c_0, c_1, ... with exact terms and direct
// residue evaluation modulo M.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "circleconv/common.hpp"
#include "circleconv/polynomial.hpp"

namespace circleconv {

struct SequenceSpec;

/// c_k = q^k.
struct PowerSeq {
  std::int64_t q = 2;
};
/// c_k = b^(2^k).
struct DoubleExpSeq {
  std::int64_t b = 2;
};
/// c_k = k^ell.
struct PolySeq {
  unsigned ell = 1;
};
/// c_k = r q^k + s.
struct AffineExpSeq {
  std::int64_t r = 1;
  std::int64_t s = 0;
  std::int64_t q = 2;
};
/// c_{k+n} + a_{n-1} c_{k+n-1} + ... + a_0 c_k = 0 for f = x^n + ... + a_0.
/// Initial terms beyond the degree must already satisfy the recursion.
struct RecursionSeq {
  RationalPolynomial poly;
  std::vector<BigInt> init;
};
struct TableSeq {
  std::vector<BigInt> values;
  std::string source;  // file the values came from, echoed in reports
};
/// c_{d k + r} = (component r)_k for d components.
struct IntertwineSeq {
  std::vector<SequenceSpec> parts;
};

struct SequenceSpec {
  using Kind = std::variant<PowerSeq, DoubleExpSeq, PolySeq, AffineExpSeq, RecursionSeq, TableSeq, IntertwineSeq>;
  Kind kind;
};

/// Throws std::invalid_argument when the sequence description breaks its invariants.
void validate(const SequenceSpec& spec);

/// c_0 .. c_{count-1} reduced into [0, modulus).
std::vector<std::uint64_t> residues(const SequenceSpec& spec, std::uint64_t count, std::uint64_t modulus);

/// Exact terms c_0 .. c_{count-1}. Terms wider than max_bits raise CapExceeded.
std::vector<BigInt> exact_terms(const SequenceSpec& spec, std::size_t count, std::size_t max_bits = 1u << 16);

/// Number of terms available, or nullopt when unbounded.
std::optional<std::uint64_t> available_terms(const SequenceSpec& spec);

}  // namespace circleconv
