#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaplab/scalar.hpp"

namespace gaplab {

/// One linear piece slope * x + intercept on [left, right) or [left, right].
/// Whether `left` itself belongs to the piece is decided by the previous
/// piece's right_closed flag (the first piece always owns 0).
struct Piece {
  Scalar left;
  Scalar right;
  bool right_closed = false;
  Scalar slope;
  Scalar intercept;

  Scalar value_at(const Scalar& x) const { return slope * x + intercept; }
};

struct SlopeStats {
  std::size_t pieces = 0;               // l
  std::size_t distinct_magnitudes = 0;  // mu
};

struct FunctionExtrema {
  Scalar inf_value;
  Scalar sup_value;
};

/// A validated piecewise-linear periodic function: the pieces tile [0, P)
/// with one owner per point and adjacent pieces are never collinear.
class PiecewiseLinear {
 public:
  /// Validates and returns the function; throws invalid_partition,
  /// not_maximal or invalid_argument. Never repairs its input.
  static PiecewiseLinear validate(std::vector<Piece> pieces, Scalar period);

  const Scalar& period() const { return period_; }
  std::span<const Piece> pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  /// Whether piece i contains its left endpoint.
  bool left_closed(std::size_t i) const { return i == 0 || !pieces_[i - 1].right_closed; }

  /// Index of the piece owning a coordinate already reduced into [0, P).
  std::size_t locate(const Scalar& reduced) const;

  Scalar eval(const Scalar& x) const;

  /// Replaces an approx reduced coordinate lying within the tolerance of a
  /// breakpoint (or of P) by that breakpoint. Exact inputs are untouched.
  Scalar snap(const Scalar& reduced, const ToleranceContext& ctx) const;

  SlopeStats slope_stats() const;
  FunctionExtrema extrema() const;
  bool injective_on_fd() const;
  bool monotone_on_fd() const;

  /// c1 * f + c2; c1 must be nonzero.
  PiecewiseLinear affine_image(const Scalar& c1, const Scalar& c2) const;

 private:
  PiecewiseLinear(std::vector<Piece> pieces, Scalar period)
      : pieces_(std::move(pieces)), period_(std::move(period)) {}

  std::vector<Piece> pieces_;
  Scalar period_;
};

using RealFn = std::function<Real(const Real&)>;

/// A C^2 periodic function given by evaluators for f, f' and f''. The
/// extrema are supplied by whoever builds it.
struct AnalyticPeriodic {
  std::string name;
  Scalar period;
  unsigned bits = kDefaultPrecisionBits;
  RealFn f;
  RealFn df;
  RealFn d2f;
  FunctionExtrema extrema;

  Scalar eval(const Scalar& x) const;
  AnalyticPeriodic affine_image(const Scalar& c1, const Scalar& c2) const;
};

/// Spot-checks periodicity and that df/d2f agree with central differences
/// of f. Throws invalid_argument on failure.
void validate_analytic(const AnalyticPeriodic& fn, std::size_t samples = 16,
                       unsigned long seed = 1);

using PeriodicFunction = std::variant<PiecewiseLinear, AnalyticPeriodic>;

Scalar eval(const PeriodicFunction& fn, const Scalar& x);
const Scalar& period(const PeriodicFunction& fn);
FunctionExtrema extrema(const PeriodicFunction& fn);
PeriodicFunction affine_image(const PeriodicFunction& fn, const Scalar& c1, const Scalar& c2);

// Builtins.
PiecewiseLinear sawtooth();
PiecewiseLinear triangle_wave();
AnalyticPeriodic cosine(unsigned bits = kDefaultPrecisionBits);
AnalyticPeriodic shifted_cosine(const Scalar& shift, unsigned bits = kDefaultPrecisionBits);

/// "sawtooth", "triangle", "cosine" or "shifted_cosine(<expr>)".
PeriodicFunction builtin(std::string_view name, unsigned bits = kDefaultPrecisionBits);

}  // namespace gaplab
