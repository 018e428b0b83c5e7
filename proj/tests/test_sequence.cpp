#include "doctest.h"

#include "circleconv/sequence.hpp"
#include "oracles.hpp"

using namespace circleconv;
using oracle::Big;

namespace {

SequenceSpec rec(std::vector<Big> poly, std::vector<Big> init) {
  return {RecursionSeq{RationalPolynomial::from_descending(poly), std::move(init)}};
}

Big big_pow(Big b, unsigned e) {
  Big r = 1;
  while (e--) r *= b;
  return r;
}

void check_residues_match_terms(const SequenceSpec& s, std::size_t count) {
  const auto terms = exact_terms(s, count);
  for (const std::uint64_t m : {1ull, 7ull, 32ull, 1000003ull}) {
    const auto res = residues(s, count, m);
    REQUIRE(res.size() == count);
    for (std::size_t k = 0; k < count; ++k) {
      const Big r = ((terms[k] % m) + m) % m;
      CHECK(res[k] == r.convert_to<std::uint64_t>());
    }
  }
}

}  // namespace

TEST_CASE("closed forms") {
  const auto pow = exact_terms({PowerSeq{-3}}, 6);
  for (unsigned k = 0; k < 6; ++k) CHECK(pow[k] == big_pow(-3, k));
  const auto dbl = exact_terms({DoubleExpSeq{3}}, 5);
  for (unsigned k = 0; k < 5; ++k) CHECK(dbl[k] == big_pow(3, 1u << k));
  const auto poly = exact_terms({PolySeq{3}}, 6);
  for (unsigned k = 0; k < 6; ++k) CHECK(poly[k] == Big(k * k * k));
  const auto aff = exact_terms({AffineExpSeq{2, -5, 7}}, 6);
  for (unsigned k = 0; k < 6; ++k) CHECK(aff[k] == 2 * big_pow(7, k) - 5);
}

TEST_CASE("recursions follow the oracle") {
  const auto s = rec({1, -7, 6}, {4, 9});
  const auto terms = exact_terms(s, 30);
  CHECK(terms == oracle::recursion_terms({1, -7, 6}, {4, 9}, 30));
  CHECK(terms[5] == 7779);
  for (unsigned k = 0; k < 30; ++k) CHECK(terms[k] == 3 + big_pow(6, k));
}

TEST_CASE("residues agree with exact terms") {
  check_residues_match_terms({PowerSeq{3}}, 40);
  check_residues_match_terms({PowerSeq{-10}}, 40);
  check_residues_match_terms({DoubleExpSeq{2}}, 12);
  check_residues_match_terms({DoubleExpSeq{6}}, 10);
  check_residues_match_terms({PolySeq{4}}, 60);
  check_residues_match_terms({AffineExpSeq{-3, 11, 5}}, 40);
  check_residues_match_terms(rec({1, -1, -1}, {0, 1}), 80);
  check_residues_match_terms(rec({1, 2, 0, -5}, {1, -4, 9}), 60);
  check_residues_match_terms({TableSeq{{5, -2, 17, 0, 1}, "inline"}}, 5);
  check_residues_match_terms({IntertwineSeq{{SequenceSpec{PowerSeq{2}}, SequenceSpec{PolySeq{2}}, SequenceSpec{AffineExpSeq{1, 1, 3}}}}}, 45);
}

TEST_CASE("intertwining interleaves components") {
  const SequenceSpec s{IntertwineSeq{{SequenceSpec{TableSeq{{1, 1, 1, 1}, ""}}, SequenceSpec{TableSeq{{2, 2, 2}, ""}}}}};
  CHECK(available_terms(s) == 7u);
  const auto t = exact_terms(s, 7);
  CHECK(t == std::vector<Big>{1, 2, 1, 2, 1, 2, 1});
  CHECK_THROWS_AS(exact_terms(s, 8), std::invalid_argument);
  CHECK_FALSE(available_terms({PowerSeq{2}}).has_value());
}

TEST_CASE("residues of huge terms stay cheap") {
  // 2^(2^k) mod 10^6 for k up to 10^6 without forming the terms.
  const auto r = residues({DoubleExpSeq{2}}, 1000000, 1000000);
  std::uint64_t x = 2;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] != x) {
      CHECK(r[k] == x);
      break;
    }
    x = x * x % 1000000;
  }
  CHECK_THROWS_AS(exact_terms({DoubleExpSeq{2}}, 30, 4096), CapExceeded);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate({PowerSeq{0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({AffineExpSeq{0, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({AffineExpSeq{1, 1, 0}}), std::invalid_argument);
  CHECK_NOTHROW(validate({AffineExpSeq{1, 1, 1}}));
  CHECK_THROWS_AS(validate(rec({1, -7, 6}, {4})), std::invalid_argument);
  CHECK_THROWS_AS(validate(rec({1, -7, 6}, {4, 9, 40})), std::invalid_argument);
  CHECK_NOTHROW(validate(rec({1, -7, 6}, {4, 9, 39})));
  CHECK_THROWS_AS(validate({RecursionSeq{RationalPolynomial::from_descending({2, 1}), {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({TableSeq{{}, ""}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({IntertwineSeq{}}), std::invalid_argument);
  CHECK_THROWS_AS(residues({PowerSeq{2}}, 5, 0), std::invalid_argument);
}
