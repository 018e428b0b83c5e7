#include "circleconv/sequence.hpp"

#include <boost/multiprecision/integer.hpp>

namespace circleconv {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<BigInt> recursion_coefficients(const RationalPolynomial& f) {
  std::vector<BigInt> a;
  for (const auto& c : f.coefficients()) a.push_back(boost::multiprecision::numerator(c));
  return a;
}

// Next term from the previous n terms (window[0] oldest).
BigInt next_exact(const std::vector<BigInt>& a, const std::vector<BigInt>& window) {
  BigInt acc = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) acc -= a[i] * window[i];
  return acc;
}

void check_width(const BigInt& x, std::size_t max_bits) {
  if (x != 0 && boost::multiprecision::msb(x < 0 ? BigInt(-x) : x) >= max_bits) {
    throw CapExceeded("sequence term exceeds " + std::to_string(max_bits) + " bits");
  }
}

}  // namespace

void validate(const SequenceSpec& spec) {
  std::visit(Overloaded{
                 [](const PowerSeq& s) {
                   if (s.q == 0) throw std::invalid_argument("pow: q must be nonzero");
                 },
                 [](const DoubleExpSeq&) {},
                 [](const PolySeq&) {},
                 [](const AffineExpSeq& s) {
                   if (s.q < 1) throw std::invalid_argument("affine: q must be at least 1");
                   if (s.r == 0) throw std::invalid_argument("affine: r must be nonzero");
                 },
                 [](const RecursionSeq& s) {
                   if (!s.poly.is_monic() || !s.poly.has_integer_coefficients()) {
                     throw std::invalid_argument("rec: polynomial must be monic with integer coefficients");
                   }
                   if (s.init.size() < static_cast<std::size_t>(s.poly.degree())) {
                     throw std::invalid_argument("rec: need at least " + std::to_string(s.poly.degree()) +
                                                 " initial terms");
                   }
                   const auto a = recursion_coefficients(s.poly);
                   const std::size_t n = a.size() - 1;
                   for (std::size_t k = n; k < s.init.size(); ++k) {
                     std::vector<BigInt> window(s.init.begin() + static_cast<std::ptrdiff_t>(k - n),
                                                s.init.begin() + static_cast<std::ptrdiff_t>(k));
                     if (next_exact(a, window) != s.init[k]) {
                       throw std::invalid_argument("rec: initial term " + std::to_string(k) +
                                                   " does not satisfy the recursion");
                     }
                   }
                 },
                 [](const TableSeq& s) {
                   if (s.values.empty()) throw std::invalid_argument("table: no values");
                 },
                 [](const IntertwineSeq& s) {
                   if (s.parts.empty()) throw std::invalid_argument("intertwine: no components");
                   for (const auto& part : s.parts) validate(part);
                 },
             },
             spec.kind);
}

std::optional<std::uint64_t> available_terms(const SequenceSpec& spec) {
  if (const auto* t = std::get_if<TableSeq>(&spec.kind)) return t->values.size();
  if (const auto* w = std::get_if<IntertwineSeq>(&spec.kind)) {
    std::optional<std::uint64_t> best;
    const std::uint64_t d = w->parts.size();
    for (std::uint64_t r = 0; r < d; ++r) {
      const auto part = available_terms(w->parts[r]);
      if (!part) continue;
      // component r serves indices r, r + d, ..., so index part * d + r is the first it cannot.
      const std::uint64_t total = *part * d + r;
      best = best ? std::min(*best, total) : total;
    }
    return best;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> residues(const SequenceSpec& spec, std::uint64_t count, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (const auto avail = available_terms(spec); avail && *avail < count) {
    throw std::invalid_argument("sequence supplies only " + std::to_string(*avail) + " terms, " +
                                std::to_string(count) + " requested");
  }
  std::vector<std::uint64_t> out(count);
  const std::uint64_t m = modulus;
  std::visit(Overloaded{
                 [&](const PowerSeq& s) {
                   const std::uint64_t q = reduce_mod(s.q, m);
                   std::uint64_t x = 1 % m;
                   for (auto& v : out) {
                     v = x;
                     x = mulmod(x, q, m);
                   }
                 },
                 [&](const DoubleExpSeq& s) {
                   std::uint64_t x = reduce_mod(s.b, m);
                   for (auto& v : out) {
                     v = x;
                     x = mulmod(x, x, m);
                   }
                 },
                 [&](const PolySeq& s) {
                   for (std::uint64_t k = 0; k < count; ++k) out[k] = powmod(k % m, s.ell, m);
                 },
                 [&](const AffineExpSeq& s) {
                   const std::uint64_t r = reduce_mod(s.r, m);
                   const std::uint64_t sh = reduce_mod(s.s, m);
                   const std::uint64_t q = reduce_mod(s.q, m);
                   std::uint64_t x = 1 % m;
                   for (auto& v : out) {
                     v = (mulmod(r, x, m) + sh) % m;
                     x = mulmod(x, q, m);
                   }
                 },
                 [&](const RecursionSeq& s) {
                   const auto a = recursion_coefficients(s.poly);
                   const std::size_t n = a.size() - 1;
                   std::vector<std::uint64_t> neg(n);
                   for (std::size_t i = 0; i < n; ++i) neg[i] = reduce_mod(BigInt(-a[i]), m);
                   for (std::uint64_t k = 0; k < count; ++k) {
                     if (k < s.init.size()) {
                       out[k] = reduce_mod(s.init[k], m);
                       continue;
                     }
                     unsigned __int128 acc = 0;
                     for (std::size_t i = 0; i < n; ++i) acc += static_cast<unsigned __int128>(neg[i]) * out[k - n + i] % m;
                     out[k] = static_cast<std::uint64_t>(acc % m);
                   }
                 },
                 [&](const TableSeq& s) {
                   for (std::uint64_t k = 0; k < count; ++k) out[k] = reduce_mod(s.values[k], m);
                 },
                 [&](const IntertwineSeq& s) {
                   const std::uint64_t d = s.parts.size();
                   for (std::uint64_t r = 0; r < d && r < count; ++r) {
                     const std::uint64_t len = (count - r + d - 1) / d;
                     const auto part = residues(s.parts[r], len, m);
                     for (std::uint64_t j = 0; j < len; ++j) out[j * d + r] = part[j];
                   }
                 },
             },
             spec.kind);
  return out;
}

std::vector<BigInt> exact_terms(const SequenceSpec& spec, std::size_t count, std::size_t max_bits) {
  if (const auto avail = available_terms(spec); avail && *avail < count) {
    throw std::invalid_argument("sequence supplies only " + std::to_string(*avail) + " terms, " +
                                std::to_string(count) + " requested");
  }
  std::vector<BigInt> out;
  out.reserve(count);
  std::visit(Overloaded{
                 [&](const PowerSeq& s) {
                   BigInt x = 1;
                   for (std::size_t k = 0; k < count; ++k) {
                     check_width(x, max_bits);
                     out.push_back(x);
                     x *= s.q;
                   }
                 },
                 [&](const DoubleExpSeq& s) {
                   BigInt x = s.b;
                   for (std::size_t k = 0; k < count; ++k) {
                     check_width(x, max_bits);
                     out.push_back(x);
                     x *= x;
                   }
                 },
                 [&](const PolySeq& s) {
                   for (std::size_t k = 0; k < count; ++k) out.push_back(boost::multiprecision::pow(BigInt(k), s.ell));
                 },
                 [&](const AffineExpSeq& s) {
                   BigInt x = 1;
                   for (std::size_t k = 0; k < count; ++k) {
                     check_width(x, max_bits);
                     out.push_back(s.r * x + s.s);
                     x *= s.q;
                   }
                 },
                 [&](const RecursionSeq& s) {
                   const auto a = recursion_coefficients(s.poly);
                   const std::size_t n = a.size() - 1;
                   for (std::size_t k = 0; k < count; ++k) {
                     if (k < s.init.size()) {
                       out.push_back(s.init[k]);
                       continue;
                     }
                     std::vector<BigInt> window(out.end() - static_cast<std::ptrdiff_t>(n), out.end());
                     BigInt next = next_exact(a, window);
                     check_width(next, max_bits);
                     out.push_back(std::move(next));
                   }
                 },
                 [&](const TableSeq& s) { out.assign(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(count)); },
                 [&](const IntertwineSeq& s) {
                   const std::size_t d = s.parts.size();
                   out.assign(count, BigInt(0));
                   for (std::size_t r = 0; r < d && r < count; ++r) {
                     const std::size_t len = (count - r + d - 1) / d;
                     const auto part = exact_terms(s.parts[r], len, max_bits);
                     for (std::size_t j = 0; j < len; ++j) out[j * d + r] = part[j];
                   }
                 },
             },
             spec.kind);
  return out;
}

}  // namespace circleconv
