#pragma once

// JSON and CSV forms of the library types. JSON is canonical; CSV is a
// flat projection of a GapReport.

#include <string>

#include "json.hpp"

#include "gaplab/gap_core.hpp"
#include "gaplab/periodic_fn.hpp"
#include "gaplab/scalar.hpp"
#include "gaplab/theorem_suite.hpp"

namespace gaplab {

using Json = nlohmann::json;

/// {"rational": "p/q"} or {"real": "<decimal>", "bits": n}.
Json to_json(const Scalar& x);
/// Also accepts a bare constant-expression string ("3/4", "0.5") or an
/// integer, read as an exact rational.
Scalar scalar_from_json(const Json& j);

Json to_json(const PiecewiseLinear& f);
PiecewiseLinear pl_from_json(const Json& j);

Json to_json(const GapReport& report);
Json to_json(const VerificationReport& report);
Json to_json(const C2Witness& witness);

inline constexpr const char* kGapCsvHeader = "index,d_lower,d_upper,lower,upper,length,kind,piece";

/// Header row plus one row per gap entry.
std::string to_csv(const GapReport& report);

}  // namespace gaplab
