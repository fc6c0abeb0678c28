#pragma once

#include <string_view>

#include "gaplab/scalar.hpp"

namespace gaplab {

/// Parses a constant expression such as "1/4", "0.3", "pi/16", "7*sqrt2",
/// "sqrt2-1" or "pi/(2*51)". Literals are read as exact rationals; the
/// constants pi, e, sqrt2 and phi are evaluated at `bits`.
///
/// Exact mode rejects any constant with parse_error. Approx mode returns a
/// real at `bits` even for purely rational input.
Scalar parse_scalar(std::string_view text, Mode mode, unsigned bits = kDefaultPrecisionBits);

}  // namespace gaplab
