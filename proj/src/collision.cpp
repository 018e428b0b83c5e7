#include "circleconv/collision.hpp"

#include <cmath>
#include <numeric>

#include <boost/multiprecision/integer.hpp>

namespace circleconv {

namespace {

std::uint64_t level_modulus(std::uint64_t base, unsigned level, std::uint64_t count_cap) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  const auto size = checked_pow(base, level);
  if (!size || *size > count_cap) {
    throw CapExceeded("level " + std::to_string(level) + " needs " + std::to_string(base) + "^" +
                      std::to_string(level) + " terms, over the counting cap of " + std::to_string(count_cap) +
                      "; largest feasible level is " + std::to_string(largest_feasible_level(base, count_cap)));
  }
  return *size;
}

// sum over residues t of #{k < size : c_k = t mod size}^2, for size | modulus of the values.
std::uint64_t count_pairs(const std::vector<std::uint64_t>& values, std::uint64_t size) {
  std::vector<std::uint32_t> counts(size, 0);
  for (std::uint64_t k = 0; k < size; ++k) ++counts[values[k] % size];
  std::uint64_t pairs = 0;
  for (const auto c : counts) pairs += static_cast<std::uint64_t>(c) * c;
  return pairs;
}

double gamma_of(std::uint64_t pairs, std::uint64_t base, unsigned level) {
  return std::log(static_cast<double>(pairs)) / (level * std::log(static_cast<double>(base)));
}

}  // namespace

unsigned largest_feasible_level(std::uint64_t base, std::uint64_t count_cap) {
  unsigned n = 0;
  while (true) {
    const auto next = checked_pow(base, n + 1);
    if (!next || *next > count_cap) return n;
    ++n;
  }
}

std::uint64_t collision_pairs(const SequenceSpec& seq, std::uint64_t base, unsigned level, std::uint64_t count_cap) {
  const std::uint64_t size = level_modulus(base, level, count_cap);
  return count_pairs(residues(seq, size, size), size);
}

std::vector<LevelRecord> gamma_estimates(const SequenceSpec& seq, std::uint64_t base, unsigned n_max,
                                         std::uint64_t count_cap) {
  const std::uint64_t top = level_modulus(base, n_max, count_cap);
  const auto values = residues(seq, top, top);
  std::vector<LevelRecord> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t size = *checked_pow(base, n);
    const std::uint64_t pairs = count_pairs(values, size);
    out.push_back({n, pairs, gamma_of(pairs, base, n)});
  }
  return out;
}

RationalPolynomial minimal_recursion(std::span<const BigInt> terms, unsigned max_degree) {
  // Berlekamp-Massey: C(x) = 1 + c_1 x + ... + c_L x^L with
  // s_n + c_1 s_{n-1} + ... + c_L s_{n-L} = 0 for L <= n < N.
  std::vector<Rational> c{Rational(1)};
  std::vector<Rational> b{Rational(1)};
  std::size_t length = 0;
  std::size_t shift = 1;
  Rational last(1);
  for (std::size_t n = 0; n < terms.size(); ++n) {
    Rational d(terms[n]);
    for (std::size_t i = 1; i <= length && i < c.size(); ++i) d += c[i] * terms[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational factor = d / last;
    std::vector<Rational> updated = c;
    if (updated.size() < b.size() + shift) updated.resize(b.size() + shift, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) updated[i + shift] -= factor * b[i];
    if (2 * length <= n) {
      b = std::move(c);
      length = n + 1 - length;
      last = d;
      shift = 1;
      if (length > max_degree) {
        throw std::invalid_argument("not a linear recursion at this cap (degree exceeds " +
                                    std::to_string(max_degree) + ")");
      }
    } else {
      ++shift;
    }
    c = std::move(updated);
  }
  if (2 * length > terms.size()) {
    throw std::invalid_argument("not a linear recursion at this cap: " + std::to_string(terms.size()) +
                                " terms cannot determine a recursion of degree " + std::to_string(length));
  }
  c.resize(length + 1, Rational(0));
  std::vector<Rational> ascending(length + 1);
  for (std::size_t i = 0; i <= length; ++i) ascending[i] = c[length - i];
  RationalPolynomial f(std::move(ascending));

  // Independent check of the annihilation on every window.
  for (std::size_t k = 0; k + length < terms.size(); ++k) {
    Rational acc(0);
    for (std::size_t i = 0; i <= length; ++i) acc += f.coefficient(static_cast<unsigned>(i)) * terms[k + i];
    if (acc != 0) throw NumericError("recovered recursion fails at term " + std::to_string(k + length));
  }
  return f;
}

std::vector<IntertwineComponent> intertwine_decompose(std::span<const BigInt> terms, unsigned d, unsigned max_degree) {
  if (d == 0) throw std::invalid_argument("intertwine needs d >= 1");
  std::vector<IntertwineComponent> out(d);
  for (std::size_t i = 0; i < terms.size(); ++i) out[i % d].terms.push_back(terms[i]);
  for (auto& part : out) {
    part.poly = minimal_recursion(part.terms, max_degree);
    if (part.poly.has_integer_coefficients()) {
      const auto n = static_cast<std::size_t>(part.poly.degree());
      part.spec.kind = RecursionSeq{part.poly, std::vector<BigInt>(part.terms.begin(), part.terms.begin() + static_cast<std::ptrdiff_t>(n))};
    } else {
      part.spec.kind = TableSeq{part.terms, ""};
    }
  }
  return out;
}

std::vector<IntertwineComponent> intertwine_decompose(const SequenceSpec& seq, unsigned d, std::size_t term_count,
                                                      unsigned max_degree) {
  const auto terms = exact_terms(seq, term_count);
  return intertwine_decompose(terms, d, max_degree);
}

double ExactExponent::value() const {
  return 1.0 + std::log(static_cast<double>(u)) / std::log(static_cast<double>(q));
}

std::string ExactExponent::symbolic() const {
  if (u == 1) return "1";
  if (u == q) return "2";
  return "1 + log(" + std::to_string(u) + ")/log(" + std::to_string(q) + ")";
}

namespace {

struct Outcome {
  ExactExponent exponent;
  bool lower_bound = false;
};

class ReducedExponentRun {
 public:
  ReducedExponentRun(std::uint64_t q, const AlgorithmOptions& options, CollisionReport& report)
      : q_(q), options_(options), report_(report) {}

  Outcome solve(std::vector<BigInt> terms, unsigned depth) {
    if (depth > options_.max_depth) {
      throw std::domain_error("degenerate beyond algorithm scope: recursion depth " +
                              std::to_string(options_.max_depth) + " exhausted");
    }
    RationalPolynomial f = minimal_recursion(terms, options_.max_degree);
    if (depth == 0) report_.minimal_polynomial = f;
    note(1, depth, "minimal polynomial " + f.to_string() + " from " + std::to_string(terms.size()) + " terms");

    unsigned dropped = 0;
    while (f.degree() > 0 && f.coefficient(0) == 0) {
      f = f.divmod(RationalPolynomial::monomial(1)).first;
      terms.erase(terms.begin());
      ++dropped;
    }
    if (dropped > 0) {
      note(1, depth, "dropped " + std::to_string(dropped) + " leading term(s); recursion " + f.to_string());
    }
    if (f.degree() <= 0 || f == RationalPolynomial({Rational(-1), Rational(1)})) {
      note(1, depth, "sequence is eventually constant");
      return {{q_, q_}, false};
    }

    if (f(Rational(-1)) == 0) {
      note(2, depth, "f(-1) = 0: splitting into even and odd terms");
      return split(terms, 2, depth);
    }

    const RationalPolynomial derivative = f.derivative();
    if (f(Rational(1)) == 0 && derivative(Rational(1)) != 0) {
      const RationalPolynomial g = f.divmod(RationalPolynomial({Rational(-1), Rational(1)})).first;
      Rational level(0);
      for (int i = 0; i <= g.degree(); ++i) level += g.coefficient(static_cast<unsigned>(i)) * terms[static_cast<std::size_t>(i)];
      const Rational offset = level / g(Rational(1));
      const BigInt r = boost::multiprecision::denominator(offset);
      const BigInt s = boost::multiprecision::numerator(offset);
      const BigInt common = boost::multiprecision::gcd(r, BigInt(q_));
      std::vector<BigInt> shifted;
      shifted.reserve(terms.size());
      for (const auto& c : terms) shifted.push_back(r * c - s);
      note(3, depth, "f(1) = 0: replacing c_k by " + r.str() + "*c_k - (" + s.str() + ")" +
                         (common > 1 ? "; gcd(r, q) = " + common.str() + " > 1, result is a lower bound" : ""));
      Outcome out = solve(std::move(shifted), depth + 1);
      out.lower_bound = out.lower_bound || common > 1;
      return out;
    }

    const auto degree = static_cast<std::uint64_t>(f.degree());
    std::uint64_t largest = 1;
    for (const auto m : totient_at_most(degree)) largest = std::max(largest, m);
    for (std::uint64_t d = 2; d <= largest; ++d) {
      // Each component satisfies a recursion of degree <= deg f and needs 2 deg f terms to pin it down.
      if (terms.size() / d < 2 * degree) {
        report_.warnings.push_back("too few terms to test an intertwining of " + std::to_string(d) + " sequences");
        continue;
      }
      std::vector<IntertwineComponent> parts;
      try {
        parts = intertwine_decompose(terms, static_cast<unsigned>(d), options_.max_degree);
      } catch (const std::invalid_argument&) {
        continue;
      }
      bool lower = true;
      for (const auto& part : parts) lower = lower && part.poly.degree() < f.degree();
      if (!lower) continue;
      std::string polys;
      for (const auto& part : parts) polys += (polys.empty() ? "" : ", ") + part.poly.to_string();
      note(5, depth, "intertwining of " + std::to_string(d) + " sequences with recursions " + polys);
      return split(terms, static_cast<unsigned>(d), depth);
    }

    if (f(Rational(1)) == 0) {
      note(4, depth, "f(1) = f'(1) = 0 and no intertwining split: exponent 1");
      return {{q_, 1}, false};
    }

    const Degeneracy dg = is_degenerate(f);
    if (dg.degenerate) {
      throw std::domain_error("degenerate beyond algorithm scope: Phi_" + std::to_string(dg.witness) + " divides " +
                              (dg.from_ratio ? "the root-ratio resultant of " : "") + f.to_string());
    }
    if (!dg.squarefree) {
      report_.warnings.push_back("minimal polynomial " + f.to_string() +
                                 " has repeated roots; their ratio 1 is not counted as degenerate");
    }
    const BigInt bracket = gcd_bracket(f);
    std::uint64_t coprime = q_;
    for (const auto prime : prime_factors(q_)) {
      if (bracket % prime == 0) {
        while (coprime % prime == 0) coprime /= prime;
      }
    }
    const ExactExponent e{q_, q_ / coprime};
    note(6, depth, "nondegenerate " + f.to_string() + ", gcd[f] = " + bracket.str() + ", q1 = " +
                       std::to_string(coprime) + ", q2 = " + std::to_string(q_ / coprime) + ": exponent " +
                       e.symbolic());
    return {e, false};
  }

 private:
  Outcome split(const std::vector<BigInt>& terms, unsigned d, unsigned depth) {
    Outcome best{{q_, 1}, false};
    for (unsigned r = 0; r < d; ++r) {
      std::vector<BigInt> part;
      for (std::size_t i = r; i < terms.size(); i += d) part.push_back(terms[i]);
      const Outcome sub = solve(std::move(part), depth + 1);
      if (sub.exponent.u > best.exponent.u) best.exponent = sub.exponent;
      best.lower_bound = best.lower_bound || sub.lower_bound;
    }
    note(7, depth, "maximum over " + std::to_string(d) + " components: " + best.exponent.symbolic());
    return best;
  }

  void note(unsigned step, unsigned depth, std::string detail) {
    report_.trace.push_back({step, depth, std::move(detail)});
  }

  std::uint64_t q_;
  AlgorithmOptions options_;
  CollisionReport& report_;
};

}  // namespace

CollisionReport reduced_exponent(std::span<const BigInt> terms, std::uint64_t q, const AlgorithmOptions& options) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  CollisionReport report;
  report.object = "gamma_prime";
  report.base = q;
  ReducedExponentRun run(q, options, report);
  const Outcome out = run.solve(std::vector<BigInt>(terms.begin(), terms.end()), 0);
  report.exponent = out.exponent;
  report.lower_bound = out.lower_bound;
  return report;
}

CollisionReport reduced_exponent(const SequenceSpec& seq, std::uint64_t q, const AlgorithmOptions& options) {
  std::size_t count = options.term_count;
  if (const auto avail = available_terms(seq)) count = std::min<std::size_t>(count, *avail);
  std::vector<BigInt> terms;
  try {
    terms = exact_terms(seq, count);
  } catch (const CapExceeded&) {
    // Terms grow too fast for an exact run; use the prefix that fits.
    std::size_t fit = count;
    while (fit > 0) {
      fit /= 2;
      try {
        terms = exact_terms(seq, fit);
        break;
      } catch (const CapExceeded&) {
      }
    }
  }
  return reduced_exponent(terms, q, options);
}

KnownBound known_bound_power(std::uint64_t p, std::uint64_t q) {
  if (p < 2 || q < 2) throw std::invalid_argument("p and q must be at least 2");
  if (std::gcd(p, q) == 1) return {KnownBound::Kind::exact, 1.0, 0};
  std::uint64_t best = 0;
  for (const auto prime : prime_factors(p)) {
    if (q % prime != 0) best = std::max(best, prime);
  }
  if (best == 0) return {KnownBound::Kind::none, 0.0, 0};
  return {KnownBound::Kind::upper, 2.0 - std::log(static_cast<double>(best)) / std::log(static_cast<double>(p)), best};
}

}  // namespace circleconv
