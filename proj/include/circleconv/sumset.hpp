#pragma once

// Digit-constrained shifts S(N, beta): sequences whose every N-digit window
// has at most floor(beta N) nonzero digits.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circleconv/common.hpp"

namespace circleconv {

/// Budget floor(beta * window) with a small guard against representation error.
unsigned digit_budget(double beta, unsigned window);

class DigitSFT {
 public:
  /// States are the occupancy patterns (nonzero or not) of the last N-1
  /// digits reachable from the all-zero pattern.
  DigitSFT(unsigned base, unsigned window, unsigned budget, std::uint64_t state_cap = Caps{}.sft_states);
  static DigitSFT from_beta(unsigned base, unsigned window, double beta, std::uint64_t state_cap = Caps{}.sft_states);

  unsigned base() const { return base_; }
  unsigned window() const { return window_; }
  unsigned budget() const { return budget_; }
  std::size_t state_count() const { return states_.size(); }

  /// Successor of state i after a zero digit / a nonzero digit, or -1 when forbidden.
  std::int64_t next_zero(std::size_t i) const { return zero_[i]; }
  std::int64_t next_nonzero(std::size_t i) const { return nonzero_[i]; }
  std::size_t start() const { return 0; }

 private:
  unsigned base_;
  unsigned window_;
  unsigned budget_;
  std::vector<std::uint64_t> states_;
  std::vector<std::int64_t> zero_;
  std::vector<std::int64_t> nonzero_;
};

struct ShiftEntropy {
  double entropy = 0;    // nats
  double dimension = 0;  // entropy / log p
};

/// log of the spectral radius of the weighted transfer matrix (a nonzero
/// digit carries weight p - 1).
ShiftEntropy topological_entropy(const DigitSFT& s);

/// Number of admissible words of length L, by dynamic programming.
double count_words(const DigitSFT& s, unsigned length);

/// Number of admissible words of length L, by enumerating all p^L words.
std::uint64_t count_words_brute_force(unsigned base, unsigned window, unsigned budget, unsigned length);

unsigned nonzero_digits(std::uint64_t value, unsigned base);

/// Whether the L-digit word (most significant digit first) has at most
/// `budget` nonzero digits in every window of `window` digits.
bool word_admissible(std::uint64_t value, unsigned base, unsigned length, unsigned window, unsigned budget);

/// All admissible L-digit words, increasing.
std::vector<std::uint64_t> admissible_words(unsigned base, unsigned length, unsigned window, unsigned budget);

struct ContainmentWitness {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned offset = 0;  // added to x + y, in [0, p - 1]
  std::uint64_t z = 0;
};

struct ContainmentResult {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  unsigned target_budget = 0;
  std::optional<ContainmentWitness> witness;  // lexicographically least (x, y, offset)
};

/// Exhaustively checks S(N, beta) + S(M, beta') within S(M, beta + beta' + 1/M)
/// on L-digit words; each sum is tried with every offset 0..p-1 for the
/// digits carried in from below the block.
ContainmentResult sumset_containment_check(unsigned n, double beta, unsigned m, double beta_prime, unsigned base,
                                           unsigned length, std::uint64_t exhaustive_cap = Caps{}.exhaustive);

struct PipelineEntry {
  double d = 0;
  bool found = false;
  unsigned window = 0;
  unsigned budget = 0;
  double beta = 0;
  double dimension = 0;
  double measure_dimension = 0;  // psi(beta) / log p
  bool measure_in_window = false;  // (1 - eps) d < measure_dimension < (1 + eps) d
  std::string note;
};

struct PipelineReport {
  unsigned base = 2;
  double eps = 0;
  std::vector<PipelineEntry> entries;
  double sum_beta = 0;
  bool condition_holds = false;  // sum beta < 1 - eps
  double bound_dim = 1;          // psi(eps + sum beta) / log p, capped at 1
  bool vacuous = true;
  std::optional<double> shift_bound_dim;  // dim S(N_n, eps + sum beta) when within the cap
};

PipelineReport dimension_gap_pipeline(std::span<const double> dims, double eps, unsigned base,
                                     std::uint64_t state_cap = Caps{}.sft_states);

}  // namespace circleconv
