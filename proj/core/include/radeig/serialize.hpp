#pragma once

#include <nlohmann/json.hpp>

#include "radeig/certify.hpp"
#include "radeig/eigen.hpp"
#include "radeig/operators.hpp"
#include "radeig/solver.hpp"

namespace radeig {

/// Reports are written with insertion-ordered keys so output files diff cleanly.
using Json = nlohmann::ordered_json;

Json to_json(const EllipticOperator& op);
Json to_json(const SupersolutionParams& p);
Json to_json(const Certificate& c);
Json to_json(const SolveReport& r);
Json to_json(const IterationReport& r);
Json to_json(const EigenEstimate& e);
Json to_json(const EigenfunctionReport& e);
Json to_json(const GeneralSolveReport& r);
Json to_json(const PropertyReport& r);

}  // namespace radeig
