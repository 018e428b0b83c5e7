#include "circleconv/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace circleconv {

RationalPolynomial::RationalPolynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::monomial(unsigned degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::from_descending(const std::vector<BigInt>& coefficients) {
  std::vector<Rational> v(coefficients.rbegin(), coefficients.rend());
  return RationalPolynomial(std::move(v));
}

bool RationalPolynomial::has_integer_coefficients() const {
  for (const auto& c : coeffs_) {
    if (boost::multiprecision::denominator(c) != 1) return false;
  }
  return true;
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) throw std::invalid_argument("the zero polynomial has no monic form");
  const Rational lead = leading();
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c /= lead;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long long>(i);
  return RationalPolynomial(std::move(v));
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPolynomial(std::move(v));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {RationalPolynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
  const Rational lead = divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] / lead;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

bool RationalPolynomial::divisible_by(const RationalPolynomial& divisor) const {
  return divmod(divisor).second.is_zero();
}

namespace {

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

std::string RationalPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (i == 0 || !unit) out += rational_text(mag);
    if (i > 0) {
      if (!unit) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::string RationalPolynomial::to_descending_list() const {
  if (!has_integer_coefficients()) throw std::invalid_argument("polynomial has non-integer coefficients");
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (!out.empty()) out += ",";
    out += rational_text(coeffs_[static_cast<std::size_t>(i)]);
  }
  return out.empty() ? "0" : out;
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

bool is_squarefree(const RationalPolynomial& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

BigInt gcd_bracket(const RationalPolynomial& f) {
  if (!f.is_monic() || !f.has_integer_coefficients()) {
    throw std::invalid_argument("gcd[f] needs a monic polynomial with integer coefficients");
  }
  BigInt g = 0;
  for (int i = 0; i < f.degree(); ++i) {
    const BigInt c = boost::multiprecision::numerator(f.coefficients()[static_cast<std::size_t>(i)]);
    g = boost::multiprecision::gcd(g, c < 0 ? BigInt(-c) : c);
  }
  return g;
}

RationalPolynomial cyclotomic(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
  static std::map<std::uint64_t, RationalPolynomial> cache;
  static std::recursive_mutex guard;
  const std::lock_guard lock(guard);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  // Phi_m(x) = Phi_rad(m)(x^(m / rad(m))); the squarefree core is built by
  // dividing x^r - 1 by the cyclotomic polynomials of the proper divisors of r.
  std::uint64_t rad = 1;
  for (const auto p : prime_factors(m)) rad *= p;
  RationalPolynomial core;
  if (auto it = cache.find(rad); it != cache.end()) {
    core = it->second;
  } else {
    core = RationalPolynomial::monomial(static_cast<unsigned>(rad)) - RationalPolynomial::constant(1);
    for (std::uint64_t d = 1; d < rad; ++d) {
      if (rad % d == 0) core = core.divmod(cyclotomic(d)).first;
    }
    cache.emplace(rad, core);
  }
  const std::uint64_t stretch = m / rad;
  std::vector<Rational> v(static_cast<std::size_t>(core.degree()) * stretch + 1, Rational(0));
  for (int i = 0; i <= core.degree(); ++i) v[static_cast<std::size_t>(i) * stretch] = core.coefficients()[static_cast<std::size_t>(i)];
  RationalPolynomial out(std::move(v));
  cache.emplace(m, out);
  return out;
}

std::vector<std::uint64_t> totient_at_most(std::uint64_t bound) {
  // phi(m) >= sqrt(m / 2), so m <= 2 bound^2 covers every candidate.
  std::vector<std::uint64_t> out;
  const std::uint64_t limit = 2 * bound * bound + 2;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    if (totient(m) <= bound) out.push_back(m);
  }
  return out;
}

namespace {

// Determinant by fraction-free Bareiss elimination.
BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
      }
    }
    previous = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Sylvester matrix of two polynomials of formal degree n (leading terms may vanish).
BigInt sylvester_resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  const std::size_t n = f.size() - 1;
  const std::size_t size = 2 * n;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i <= n; ++i) s[row][row + i] = f[n - i];
    for (std::size_t i = 0; i <= n; ++i) s[n + row][row + i] = g[n - i];
  }
  return determinant(std::move(s));
}

RationalPolynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Rational> coef = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  }
  RationalPolynomial out = RationalPolynomial::constant(coef[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    out = out * RationalPolynomial({-xs[i], Rational(1)}) + RationalPolynomial::constant(coef[i]);
  }
  return out;
}

std::vector<BigInt> integer_coefficients(const RationalPolynomial& f) {
  std::vector<BigInt> out;
  for (const auto& c : f.coefficients()) out.push_back(boost::multiprecision::numerator(c));
  return out;
}

}  // namespace

RationalPolynomial root_ratio_resultant(const RationalPolynomial& f) {
  if (!f.has_integer_coefficients() || f.degree() < 1) {
    throw std::invalid_argument("ratio resultant needs an integer polynomial of degree >= 1");
  }
  const std::vector<BigInt> fy = integer_coefficients(f);
  const std::size_t n = fy.size() - 1;
  const std::size_t points = n * n + 1;
  std::vector<Rational> xs, ys;
  for (std::size_t t = 0; t < points; ++t) {
    const BigInt x = static_cast<long long>(t);
    std::vector<BigInt> fxy(n + 1);
    BigInt power = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      fxy[i] = fy[i] * power;
      power *= x;
    }
    xs.emplace_back(x);
    ys.emplace_back(sylvester_resultant(fy, fxy));
  }
  return interpolate(xs, ys);
}

Degeneracy is_degenerate(const RationalPolynomial& f) {
  if (!f.is_monic() || !f.has_integer_coefficients()) {
    throw std::invalid_argument("degeneracy test needs a monic integer polynomial");
  }
  if (f.coefficient(0) == 0) throw std::invalid_argument("degeneracy test needs f(0) != 0");
  Degeneracy out;
  out.squarefree = is_squarefree(f);
  const auto n = static_cast<std::uint64_t>(f.degree());
  if (n == 0) return out;
  for (const auto m : totient_at_most(n)) {
    if (f.divisible_by(cyclotomic(m))) {
      out.degenerate = true;
      out.witness = m;
      return out;
    }
  }
  RationalPolynomial r = root_ratio_resultant(f);
  const RationalPolynomial x_minus_1({Rational(-1), Rational(1)});
  for (std::uint64_t i = 0; i < n; ++i) r = r.divmod(x_minus_1).first;
  for (const auto m : totient_at_most(n * n)) {
    if (m < 2) continue;
    if (r.divisible_by(cyclotomic(m))) {
      out.degenerate = true;
      out.witness = m;
      out.from_ratio = true;
      return out;
    }
  }
  return out;
}

}  // namespace circleconv
