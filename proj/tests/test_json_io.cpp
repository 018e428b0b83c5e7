#include "doctest.h"

#include <limits>

#include "circleconv/json_io.hpp"

using namespace circleconv;

TEST_CASE("reals are written at twelve significant digits") {
  CHECK(real_json(1.0 / 3).dump() == "0.333333333333");
  CHECK(real_json(2.0).dump() == "2.0");
  CHECK(real_json(1234567.891011121314).get<double>() == 1234567.89101);
  CHECK(real_json(std::numeric_limits<double>::infinity()).is_null());
  CHECK(real_json(std::nan("")).is_null());
}

TEST_CASE("exponent round trip") {
  const ExactExponent e{10, 2};
  const auto j = to_json(e);
  CHECK(j["symbolic"] == "1 + log(2)/log(10)");
  CHECK(j["q"] == 10);
  CHECK(exponent_from_json(j) == e);
  CHECK(exponent_from_json(to_json(ExactExponent{7, 7})) == ExactExponent{7, 7});
}

TEST_CASE("collision report round trip") {
  const auto report = reduced_exponent(SequenceSpec{RecursionSeq{RationalPolynomial::from_descending({1, -7, 6}), {4, 9}}}, 10);
  const auto j = to_json(report);
  CHECK(j["object"] == "gamma_prime");
  CHECK(j["gamma_prime"]["symbolic"] == "1 + log(2)/log(10)");
  CHECK(j["relation"] == "=");
  CHECK(j["minimal_polynomial"] == "x^2 - 7*x + 6");
  const auto back = collision_report_from_json(j);
  CHECK(back.object == report.object);
  CHECK(back.exponent == report.exponent);
  CHECK(back.minimal_polynomial == report.minimal_polynomial);
  CHECK(back.trace.size() == report.trace.size());
  CHECK(to_json(back) == j);

  CollisionReport estimate;
  estimate.object = "gamma";
  estimate.base = 2;
  estimate.levels = gamma_estimates(SequenceSpec{PowerSeq{3}}, 2, 6);
  estimate.warnings.push_back("no exact formula");
  const auto je = to_json(estimate);
  const auto eb = collision_report_from_json(je);
  REQUIRE(eb.levels.size() == 6);
  CHECK(eb.levels[4].pairs == 128);
  CHECK(eb.levels[4].gamma == doctest::Approx(1.4));
  CHECK(eb.warnings == estimate.warnings);
  CHECK(to_json(eb) == je);

  auto lower = report;
  lower.lower_bound = true;
  CHECK(to_json(lower)["relation"] == ">=");
  CHECK(collision_report_from_json(to_json(lower)).lower_bound);
}

TEST_CASE("sum-set reports round trip") {
  const std::vector<double> dims{0.5};
  const auto p = dimension_gap_pipeline(dims, 0.1, 2);
  const auto j = to_json(p);
  CHECK(j["entries"][0]["N"] == p.entries[0].window);
  const auto back = pipeline_report_from_json(j);
  CHECK(back.entries.size() == 1);
  CHECK(back.entries[0].budget == p.entries[0].budget);
  CHECK(back.vacuous == p.vacuous);
  CHECK(back.sum_beta == doctest::Approx(p.sum_beta).epsilon(1e-11));
  CHECK(to_json(back) == j);

  const auto c = sumset_containment_check(2, 0.25, 4, 0.25, 2, 8);
  const auto jc = to_json(c);
  const auto cb = containment_from_json(jc);
  CHECK(cb.holds == c.holds);
  CHECK(cb.pairs_checked == c.pairs_checked);
  CHECK(cb.target_budget == c.target_budget);
  CHECK(to_json(cb) == jc);

  ContainmentResult failing;
  failing.holds = false;
  failing.witness = ContainmentWitness{3, 5, 1, 9};
  const auto fb = containment_from_json(to_json(failing));
  REQUIRE(fb.witness.has_value());
  CHECK(fb.witness->offset == 1);
  CHECK(fb.witness->z == 9);
}

TEST_CASE("readers reject malformed documents") {
  CHECK_THROWS(exponent_from_json(Json::parse(R"({"q": 10})")));
  CHECK_THROWS(collision_report_from_json(Json::parse("[]")));
  CHECK_THROWS(pipeline_report_from_json(Json::parse(R"({"base": "two"})")));
}
