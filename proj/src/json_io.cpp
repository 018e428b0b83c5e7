#include "circleconv/json_io.hpp"

#include <cmath>

#include "circleconv/spec_parse.hpp"

namespace circleconv {

Json real_json(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round12(value);
}

Json to_json(const ExactExponent& e) {
  return {{"symbolic", e.symbolic()}, {"value", real_json(e.value())}, {"q", e.q}, {"u", e.u}};
}

ExactExponent exponent_from_json(const Json& j) {
  return {j.at("q").get<std::uint64_t>(), j.at("u").get<std::uint64_t>()};
}

Json to_json(const CollisionReport& r) {
  Json j;
  j["object"] = r.object;
  j["base"] = r.base;
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back({{"n", l.n}, {"pairs", l.pairs}, {"gamma", real_json(l.gamma)}});
  j["levels"] = std::move(levels);
  if (r.minimal_polynomial) {
    j["minimal_polynomial"] = r.minimal_polynomial->to_string();
    j["minimal_polynomial_coefficients"] = r.minimal_polynomial->to_descending_list();
  } else {
    j["minimal_polynomial"] = nullptr;
  }
  if (r.exponent) {
    j[r.object] = to_json(*r.exponent);
    j["relation"] = r.lower_bound ? ">=" : "=";
  }
  Json trace = Json::array();
  for (const auto& t : r.trace) trace.push_back({{"step", t.step}, {"depth", t.depth}, {"detail", t.detail}});
  j["trace"] = std::move(trace);
  j["warnings"] = r.warnings;
  return j;
}

CollisionReport collision_report_from_json(const Json& j) {
  CollisionReport r;
  r.object = j.at("object").get<std::string>();
  r.base = j.at("base").get<std::uint64_t>();
  for (const auto& l : j.at("levels")) {
    r.levels.push_back({l.at("n").get<unsigned>(), l.at("pairs").get<std::uint64_t>(), l.at("gamma").get<double>()});
  }
  if (j.contains("minimal_polynomial_coefficients")) {
    r.minimal_polynomial =
        RationalPolynomial::from_descending(parse_bigint_list(j.at("minimal_polynomial_coefficients").get<std::string>()));
  }
  if (j.contains(r.object)) {
    r.exponent = exponent_from_json(j.at(r.object));
    r.lower_bound = j.at("relation").get<std::string>() == ">=";
  }
  for (const auto& t : j.at("trace")) {
    r.trace.push_back({t.at("step").get<unsigned>(), t.at("depth").get<unsigned>(), t.at("detail").get<std::string>()});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

Json to_json(const PipelineReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x{{"d", real_json(e.d)}, {"found", e.found}};
    if (e.found) {
      x["N"] = e.window;
      x["budget"] = e.budget;
      x["beta"] = real_json(e.beta);
      x["dim"] = real_json(e.dimension);
      x["measure_dim"] = real_json(e.measure_dimension);
      x["measure_in_window"] = e.measure_in_window;
    } else {
      x["note"] = e.note;
    }
    entries.push_back(std::move(x));
  }
  Json j{{"base", r.base},
         {"eps", real_json(r.eps)},
         {"entries", std::move(entries)},
         {"sum_beta", real_json(r.sum_beta)},
         {"condition_holds", r.condition_holds},
         {"bound_dim", real_json(r.bound_dim)},
         {"vacuous", r.vacuous}};
  j["shift_bound_dim"] = r.shift_bound_dim ? real_json(*r.shift_bound_dim) : Json(nullptr);
  return j;
}

PipelineReport pipeline_report_from_json(const Json& j) {
  PipelineReport r;
  r.base = j.at("base").get<unsigned>();
  r.eps = j.at("eps").get<double>();
  for (const auto& x : j.at("entries")) {
    PipelineEntry e;
    e.d = x.at("d").get<double>();
    e.found = x.at("found").get<bool>();
    if (e.found) {
      e.window = x.at("N").get<unsigned>();
      e.budget = x.at("budget").get<unsigned>();
      e.beta = x.at("beta").get<double>();
      e.dimension = x.at("dim").get<double>();
      e.measure_dimension = x.at("measure_dim").get<double>();
      e.measure_in_window = x.at("measure_in_window").get<bool>();
    } else {
      e.note = x.at("note").get<std::string>();
    }
    r.entries.push_back(std::move(e));
  }
  r.sum_beta = j.at("sum_beta").get<double>();
  r.condition_holds = j.at("condition_holds").get<bool>();
  r.bound_dim = j.at("bound_dim").get<double>();
  r.vacuous = j.at("vacuous").get<bool>();
  if (!j.at("shift_bound_dim").is_null()) r.shift_bound_dim = j.at("shift_bound_dim").get<double>();
  return r;
}

Json to_json(const ContainmentResult& r) {
  Json j{{"holds", r.holds}, {"pairs_checked", r.pairs_checked}, {"target_budget", r.target_budget}};
  if (r.witness) {
    j["witness"] = {{"x", r.witness->x}, {"y", r.witness->y}, {"offset", r.witness->offset}, {"z", r.witness->z}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

ContainmentResult containment_from_json(const Json& j) {
  ContainmentResult r;
  r.holds = j.at("holds").get<bool>();
  r.pairs_checked = j.at("pairs_checked").get<std::uint64_t>();
  r.target_budget = j.at("target_budget").get<unsigned>();
  if (!j.at("witness").is_null()) {
    const auto& w = j.at("witness");
    r.witness = ContainmentWitness{w.at("x").get<std::uint64_t>(), w.at("y").get<std::uint64_t>(),
                                   w.at("offset").get<unsigned>(), w.at("z").get<std::uint64_t>()};
  }
  return r;
}

}  // namespace circleconv
