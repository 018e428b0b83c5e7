#include "doctest.h"

#include "circleconv/genericity.hpp"
#include "oracles.hpp"

using namespace circleconv;
using oracle::Big;

namespace {

using cd = std::complex<double>;

GridMeasure grid(unsigned p, const oracle::Vec& w) {
  return GridMeasure::from_law(p, CyclicMeasure(Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()))));
}

// e(k c_n a / b) averaged over n < N, phases reduced with big integers.
cd direct_g(const std::vector<Big>& terms, long long k, std::uint64_t a, std::uint64_t b) {
  cd acc = 0;
  for (const auto& c : terms) {
    Big phase = (Big(k) * c * Big(a)) % Big(b);
    if (phase < 0) phase += b;
    acc += std::polar(1.0, 2.0 * std::numbers::pi * phase.convert_to<double>() / double(b));
  }
  return acc / double(terms.size());
}

}  // namespace

TEST_CASE("Weyl average values") {
  const WeylAverage ident{{PolySeq{1}}, 1, 2};
  CHECK(std::abs(g_value(ident, {0, 1}) - cd(1.0)) < 1e-15);
  CHECK(std::abs(g_value(ident, {1, 2})) < 1e-15);
  const WeylAverage pow3{{PowerSeq{3}}, 1, 4};
  cd expect = 0;
  for (const int c : {1, 3, 9, 27}) expect += std::polar(1.0, 2.0 * std::numbers::pi * c / 8.0);
  CHECK(std::abs(g_value(pow3, {1, 8}) - expect / 4.0) < 1e-14);

  // Huge terms stay exact because phases are reduced modulo the denominator.
  const WeylAverage dbl{{DoubleExpSeq{3}}, -5, 12};
  const auto terms = exact_terms(dbl.seq, 12, 1u << 16);
  for (const std::uint64_t b : {7u, 64u, 1000u})
    for (std::uint64_t a = 0; a < b; a += b / 7 + 1) CHECK(std::abs(g_value(dbl, {a, b}) - direct_g(terms, -5, a, b)) < 1e-12);

  CHECK_THROWS_AS(validate(WeylAverage{{PowerSeq{2}}, 0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(validate(WeylAverage{{PowerSeq{2}}, 1, 0}), std::invalid_argument);
  const DigitString x{2, {1, 0, 1}};
  CHECK(grid_point(x).numerator == 5);
  CHECK(grid_point(x).denominator == 8);
}

TEST_CASE("grid integrals agree with direct sums") {
  std::mt19937_64 rng(21);
  const std::vector<WeylAverage> ws{{{PowerSeq{3}}, 1, 16}, {{PolySeq{2}}, 3, 25}, {{DoubleExpSeq{2}}, -1, 10},
                                    {{AffineExpSeq{2, 5, 7}}, 2, 9}};
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned p = trial % 3 == 0 ? 3 : 2;
    const std::uint64_t size = p == 2 ? 256 : 243;
    const auto law = oracle::random_law(size, rng, 0.3);
    const auto mu = grid(p, law);
    for (const auto& w : ws) {
      const auto terms = exact_terms(w.seq, w.terms, 1u << 16);
      cd first = 0;
      double second = 0;
      for (std::uint64_t m = 0; m < size; ++m) {
        const cd g = direct_g(terms, w.k, m, size);
        first += law[m] * g;
        second += law[m] * std::norm(g);
      }
      CHECK(std::abs(mean_g(mu, w) - first) < 1e-10);
      CHECK(second_moment_g(mu, w) == doctest::Approx(second).epsilon(1e-10));
      const double s = second_moment_g(mu, w);
      CHECK(s >= -1e-10);
      CHECK(s <= 1 + 1e-10);
    }
  }
}

TEST_CASE("grid integral examples") {
  const auto u = GridMeasure::from_law(2, CyclicMeasure::uniform(64));
  const WeylAverage odd{{AffineExpSeq{2, 1, 3}}, 1, 20};  // 2*3^n + 1 is odd
  CHECK(std::abs(mean_g(u, odd)) < 1e-12);
  const auto delta = GridMeasure::from_law(2, CyclicMeasure::point_mass(64, 0));
  CHECK(std::abs(mean_g(delta, odd) - cd(1.0)) < 1e-12);
  CHECK(second_moment_g(delta, odd) == doctest::Approx(1.0));
  std::mt19937_64 rng(2);
  const auto mu = grid(2, oracle::random_law(64, rng));
  CHECK(second_moment_g(mu, WeylAverage{{PowerSeq{5}}, 3, 1}) == doctest::Approx(1.0));
}

TEST_CASE("reflection") {
  std::mt19937_64 rng(4);
  const auto law = oracle::random_law(27, rng);
  const auto mu = grid(3, law);
  const auto r = reflect(mu);
  for (std::uint64_t m = 0; m < 27; ++m) CHECK(r.law[m] == law[(27 - m) % 27]);
  CHECK(reflect(r).law == mu.law);
  const auto one = reflect(GridMeasure::from_law(2, CyclicMeasure::point_mass(8, 1)));
  CHECK(one.law == CyclicMeasure::point_mass(8, 7));
  for (long long l = 0; l < 27; ++l) CHECK(std::abs(oracle::dft_at(law, l) - std::conj(oracle::dft_at(
      {r.law.weights().data(), r.law.weights().data() + 27}, l))) < 1e-13);
}

TEST_CASE("second moment against the reflected self-convolution") {
  std::mt19937_64 rng(33);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = grid(2, oracle::random_law(128, rng, trial % 2 ? 0.8 : 0.0));
    const WeylAverage w{trial % 3 ? SequenceSpec{PowerSeq{3}} : SequenceSpec{PolySeq{2}}, 1 + trial % 4,
                        static_cast<std::uint64_t>(1 + trial % 30)};
    const auto check = reflection_moment_check(mu, w);
    CHECK(check.lhs == doctest::Approx(second_moment_g(mu, w)));
    CHECK(check.rhs == doctest::Approx(std::sqrt(second_moment_g(convolve(mu, reflect(mu)), w))));
    violations += !(check.lhs <= check.rhs + 1e-10) || !check.holds;
  }
  CHECK(violations == 0);
}

TEST_CASE("self-convolution squares Fourier coefficients") {
  std::mt19937_64 rng(6);
  const auto law = oracle::random_law(64, rng);
  const auto twice = oracle::convolve(law, law);
  const auto terms = exact_terms({PowerSeq{3}}, 12);
  for (const auto& c : terms) {
    const long long a = static_cast<long long>((c % 64).convert_to<std::uint64_t>());
    CHECK(std::norm(oracle::dft_at(law, a)) == doctest::Approx(std::abs(oracle::dft_at(twice, a))).epsilon(1e-12));
  }
  const auto mu = grid(2, law);
  const WeylAverage w{{PowerSeq{3}}, 1, 12};
  cd expect = 0;
  for (const auto& c : terms) expect += oracle::dft_at(twice, static_cast<long long>((c % 64).convert_to<std::uint64_t>()));
  CHECK(std::abs(mean_g(convolve(mu, mu), w) - expect / 12.0) < 1e-12);
}

TEST_CASE("rho star") {
  std::mt19937_64 rng(8);
  const auto delta = GridMeasure::from_law(2, CyclicMeasure::point_mass(1024, 0));
  const auto u = GridMeasure::from_law(2, CyclicMeasure::uniform(1024));
  const auto du = rho_star(delta, u);
  CHECK(std::abs(du.value - 2.0) <= du.tail_bound + 1e-9);
  CHECK(du.tail_bound == doctest::Approx(std::ldexp(1.0, 2 - int(kRhoStarFrequencies))));
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = grid(2, oracle::random_law(256, rng, 0.5));
    const auto b = grid(2, oracle::random_law(256, rng, 0.5));
    const auto c = grid(2, oracle::random_law(256, rng, 0.5));
    CHECK(rho_star(a, a).value == 0.0);
    const double ab = rho_star(a, b).value, ba = rho_star(b, a).value;
    CHECK(ab >= 0);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
    // Independent evaluation with the oracle DFT.
    double direct = 0;
    for (long long k = -40; k <= 40; ++k) {
      const long long l = ((k % 256) + 256) % 256;
      const auto wa = a.law.weights(), wb = b.law.weights();
      direct += std::ldexp(1.0, -int(std::abs(k))) *
                std::norm(oracle::dft_at({wa.data(), wa.data() + 256}, l) - oracle::dft_at({wb.data(), wb.data() + 256}, l));
    }
    CHECK(ab == doctest::Approx(direct).epsilon(1e-10));
    // The value is a squared distance, so its square root satisfies the triangle inequality.
    CHECK(std::sqrt(ab) <= std::sqrt(rho_star(a, c).value) + std::sqrt(rho_star(c, b).value) + 1e-9);
  }
  CHECK_THROWS_AS(rho_star(delta, GridMeasure::from_law(2, CyclicMeasure::uniform(512))), std::invalid_argument);
}

TEST_CASE("Monte-Carlo normality estimates") {
  // 3^n are distinct mod 2^20 for n < 30, so E|g|^2 = 1/N under Lebesgue measure.
  const WeylAverage w{{PowerSeq{3}}, 1, 30};
  const auto terms = exact_terms(w.seq, 30);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) REQUIRE(terms[i] != terms[j]);
  const auto lebesgue = normality_estimate(DigitMeasure::uniform(2), w, 20000, 7);
  CHECK(lebesgue.samples == 20000);
  CHECK(lebesgue.standard_error > 0);
  CHECK(std::abs(lebesgue.mean - 1.0 / 30) <= 3 * lebesgue.standard_error);
  const auto again = normality_estimate(DigitMeasure::uniform(2), w, 20000, 7);
  CHECK(again.mean == lebesgue.mean);
  CHECK(again.standard_error == lebesgue.standard_error);

  const auto point = normality_estimate(DigitMeasure::bernoulli_beta(2, 0.0), w, 500, 1);
  CHECK(point.mean == doctest::Approx(1.0).epsilon(1e-12));
  const auto single = normality_estimate(DigitMeasure::bernoulli_beta(3, 0.4), WeylAverage{{PowerSeq{2}}, 1, 1}, 500, 1);
  CHECK(single.mean == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(normality_estimate(DigitMeasure::uniform(2), WeylAverage{{DoubleExpSeq{3}}, 1, 20}, 10, 1), CapExceeded);
}
