#pragma once

// JSON forms of reports. Reals are written at 12 significant digits; the
// readers accept what the writers produce.

#include "json.hpp"

#include "circleconv/collision.hpp"
#include "circleconv/genericity.hpp"
#include "circleconv/sumset.hpp"

namespace circleconv {

using Json = nlohmann::ordered_json;

/// Rounded to 12 significant digits; non-finite values become null.
Json real_json(double value);

Json to_json(const ExactExponent& e);
ExactExponent exponent_from_json(const Json& j);

Json to_json(const CollisionReport& r);
CollisionReport collision_report_from_json(const Json& j);

Json to_json(const PipelineReport& r);
PipelineReport pipeline_report_from_json(const Json& j);

Json to_json(const ContainmentResult& r);
ContainmentResult containment_from_json(const Json& j);

}  // namespace circleconv
