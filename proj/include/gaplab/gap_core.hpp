#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gaplab/periodic_fn.hpp"
#include "gaplab/scalar.hpp"

namespace gaplab {

struct OrbitSample {
  std::size_t d = 0;
  Scalar x_reduced;                  // d*alpha + beta mod P
  std::optional<std::size_t> piece;  // owning piece, PL functions only
  Scalar value;                      // f(d*alpha + beta)
};

/// f(d*alpha + beta) for d = 1..N. In approx mode a reduced coordinate
/// within tolerance of a PL breakpoint is snapped onto it before the
/// owning piece is looked up.
std::vector<OrbitSample> orbit(const PeriodicFunction& f, const Scalar& alpha,
                               const Scalar& beta, std::size_t count,
                               const ToleranceContext& ctx);

enum class GapKind { unclassified, interior, non_interior, extremal };

std::string_view to_string(GapKind kind);

struct GapEntry {
  Scalar lower_value;
  Scalar upper_value;
  Scalar length;
  GapKind kind = GapKind::unclassified;
  std::optional<std::size_t> piece;  // set for interior gaps
};

/// One distinct orbit value and every sample that produced it.
struct ValueGroup {
  Scalar value;
  std::vector<std::size_t> ds;      // ascending
  std::vector<std::size_t> pieces;  // ascending, unique; empty for analytic f
};

struct GapReport {
  std::vector<ValueGroup> values;  // s_1 < ... < s_n
  std::vector<GapEntry> entries;   // n - 1 consecutive gaps, then the extremal gap
  std::vector<Scalar> gap_set;     // distinct lengths, ascending
  FunctionExtrema extrema;
  Mode mode = Mode::exact;
  ToleranceContext ctx = ToleranceContext::exact();

  std::size_t n() const { return values.size(); }
  std::size_t gap_count() const { return gap_set.size(); }
  std::vector<Scalar> gap_multiset() const;
  const GapEntry& extremal() const { return entries.back(); }
};

/// Builds the report from samples given in any order.
GapReport gap_report_from_samples(std::span<const OrbitSample> samples,
                                  const FunctionExtrema& extrema,
                                  const ToleranceContext& ctx);

GapReport gap_report(const PeriodicFunction& f, const Scalar& alpha, const Scalar& beta,
                     std::size_t count, const ToleranceContext& ctx);

/// Marks consecutive gaps interior(i) when some sample of the lower value
/// and some sample of the upper value share piece i, non_interior otherwise.
/// Throws unsupported for analytic functions.
GapReport classify_gaps(GapReport report, const PeriodicFunction& f);

/// Sorted, tolerance-clustered distinct members of `lengths`.
std::vector<Scalar> distinct_lengths(std::vector<Scalar> lengths, const ToleranceContext& ctx);

/// Arc lengths of the circle R/Z cut at `points` (each in [0, 1)):
/// consecutive differences of the distinct sorted points plus the
/// wraparound arc. Throws invalid_argument for empty input or points
/// outside [0, 1).
std::vector<Scalar> circle_gaps(std::span<const Scalar> points, const ToleranceContext& ctx);

/// frac(d*alpha + beta) for d in [first, last], snapped so that values
/// within tolerance of 1 become 0.
std::vector<Scalar> frac_orbit(const Scalar& alpha, const Scalar& beta, std::size_t first,
                               std::size_t last, const ToleranceContext& ctx);

/// Circle partition by {frac(d*alpha)} and {frac(d*alpha + beta)}, d = 0..N.
std::vector<Scalar> two_orbit_circle_gaps(const Scalar& alpha, const Scalar& beta,
                                          std::size_t count, const ToleranceContext& ctx);

}  // namespace gaplab
