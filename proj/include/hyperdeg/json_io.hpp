#pragma once

#include <string>

#include <json.hpp>

#include "hyperdeg/beta_solver.hpp"
#include "hyperdeg/core.hpp"
#include "hyperdeg/enumerate.hpp"
#include "hyperdeg/exact.hpp"
#include "hyperdeg/lambda_field.hpp"
#include "hyperdeg/matrix.hpp"
#include "hyperdeg/models.hpp"

namespace hyperdeg {

using Json = nlohmann::ordered_json;

// {"n": int, "r": int, "degrees": [int, ...]}; ParseError on malformed input.
DegreeSequence parse_instance(const std::string& text);
DegreeSequence load_instance(const std::string& path_or_inline);
Json to_json(const DegreeSequence& s);

Json to_json(const DerivedParams& p);
Json to_json(const SolveReport& r);
Json to_json(const FieldSummary& f);
Json to_json(const LogEstimate& e);
Json to_json(const ModelPoint& m);
Json to_json(const PredictedRatio& p);
Json to_json(const BoundReport& b);
Json to_json(const SymmetryAudit& a);

// Numbers as %.17g, no locale; indent < 0 gives a single line.
std::string dump(const Json& j, int indent = -1);

}  // namespace hyperdeg
