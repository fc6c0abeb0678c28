#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/gap_core.hpp"
#include "gaplab/periodic_fn.hpp"
#include "gaplab/scalar.hpp"

namespace gaplab {

// Stable statement ids used in reports and on the command line.
namespace statement {
inline constexpr const char* three_gap = "three_gap";
inline constexpr const char* affine = "affine";
inline constexpr const char* general = "general";
inline constexpr const char* tightened = "tightened";
inline constexpr const char* two_piece_shift = "two_piece_shift";
inline constexpr const char* triangle = "triangle";
inline constexpr const char* five_distance = "five_distance";
inline constexpr const char* main_construction = "main_construction";
inline constexpr const char* c2_construction = "c2_construction";
}  // namespace statement

/// Named parameter recorded in a report, e.g. {"alpha", 1/4}.
struct Parameter {
  std::string name;
  Scalar value;
};

struct VerificationReport {
  std::string statement;
  std::vector<Parameter> parameters;
  std::optional<std::size_t> lower_bound;  // observed >= lower_bound
  std::optional<std::size_t> upper_bound;  // observed <= upper_bound
  std::size_t observed = 0;
  bool pass = false;
  std::optional<GapReport> witness;      // gap-set statements
  std::vector<Scalar> circle_lengths;    // circle-partition statements
  std::optional<PiecewiseLinear> function;

  /// Recomputes pass from the bound fields.
  bool bounds_hold() const;
};

VerificationReport verify_three_gap(const Scalar& alpha, std::size_t count,
                                    const ToleranceContext& ctx);

/// Period-1 function m*x + c.
VerificationReport verify_affine(const Scalar& slope, const Scalar& intercept,
                                 const Scalar& alpha, const Scalar& beta, std::size_t count,
                                 const ToleranceContext& ctx);

/// |G| <= 3*mu + l. Requires an injective function (precondition_violation).
VerificationReport verify_general_bound(const PiecewiseLinear& f, const Scalar& alpha,
                                        std::size_t count, const ToleranceContext& ctx);

/// |G| <= 3*mu + l - 1 for injective, monotone f whose first and last
/// pieces share a slope.
VerificationReport verify_tightened_bound(const PiecewiseLinear& f, const Scalar& alpha,
                                          std::size_t count, const ToleranceContext& ctx);

/// f = x on [0, kappa), x - shift on [kappa, 1) with 0 < shift <= kappa < 1.
PiecewiseLinear two_piece_shift_function(const Scalar& kappa, const Scalar& shift);
VerificationReport verify_two_piece_shift(const Scalar& kappa, const Scalar& shift,
                                          const Scalar& alpha, std::size_t count,
                                          const ToleranceContext& ctx);

/// 2 <= |G| <= 4 for the triangle wave; alpha must be approx and N >= 2.
VerificationReport verify_triangle_bounds(const Scalar& alpha, std::size_t count,
                                          const ToleranceContext& ctx);

/// At most five arc lengths for two shifted orbits; beta must be nonzero.
VerificationReport verify_five_distance(const Scalar& alpha, const Scalar& beta,
                                        std::size_t count, const ToleranceContext& ctx);

/// Two-piece function x on [0, 1/2], (1+eps)x - (1+eps)/2 on (1/2, 1).
PiecewiseLinear unbounded_pl_function(const Scalar& epsilon);

struct UnboundedConstruction {
  PiecewiseLinear function;
  Scalar epsilon;
  Scalar alpha;
  std::size_t count = 0;  // N
  std::size_t n = 0;
};

/// N = 2n + 4, eps = 1/(N - 3), alpha = 1/N.
UnboundedConstruction construct_unbounded_pl(std::size_t n);

/// The lengths k*eps/N for 1 <= k <= N/2 - 1 forced into the gap set.
std::vector<Scalar> construction_ladder(const UnboundedConstruction& c);

/// Whether every ladder length appears in the report's gap set.
bool contains_ladder(const GapReport& report, const UnboundedConstruction& c);

/// Passes when |G| > n and the ladder is present.
VerificationReport verify_unbounded_construction(const UnboundedConstruction& c,
                                                 const ToleranceContext& ctx);

/// First zero of g on [lo, hi]: scans `grid_points` uniform points for a
/// value within tol of zero or a sign change, then bisects the bracket to
/// width <= tol. Returns lo when |g(lo)| <= tol. Zeros that touch without
/// changing sign between grid points are not detected.
std::optional<Real> find_first_zero(const RealFn& g, const Real& lo, const Real& hi,
                                    std::size_t grid_points, const Real& tol);

inline constexpr std::size_t kDefaultGridPoints = std::size_t{1} << 14;

struct C2Witness {
  Scalar first_inflection;    // I: first zero of f'' on [0, P]
  Scalar first_critical;      // I': first zero of f' on [0, I]
  Scalar alpha;
  std::size_t n = 0;
};

/// alpha = I/(n+1) when I' = 0, else I'/(n+1); passes when
/// |G_{f, alpha, n+1}| >= n. Throws hypothesis_violation when f''(0) is
/// zero within tolerance and search_failure when f'' has no zero.
std::pair<C2Witness, VerificationReport> construct_c2_witness(
    const AnalyticPeriodic& f, std::size_t n, const ToleranceContext& ctx,
    std::size_t grid_points = kDefaultGridPoints);

}  // namespace gaplab
