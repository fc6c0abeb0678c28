#pragma once

// Seeded random parameter draws and the randomized soundness sweep that
// runs a verifier over many of them.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gaplab/periodic_fn.hpp"
#include "gaplab/scalar.hpp"
#include "gaplab/theorem_suite.hpp"

namespace gaplab {

using Rng = std::mt19937_64;

/// Independent generator for draw `index` of a sweep seeded with `seed`.
Rng draw_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform in (0, 1) with `bits` random mantissa bits, as an approx scalar.
Scalar random_unit_real(Rng& rng, unsigned bits);

/// p/q with q uniform in [1, max_den] and p/q uniform-ish in [lo, hi).
Scalar random_rational(Rng& rng, long lo, long hi, long max_den);

/// Rational in the open interval (0, 1).
Scalar random_unit_rational(Rng& rng, long max_den);

struct FunctionShape {
  bool injective = false;
  bool monotone = false;          // implies injective
  bool equal_end_slopes = false;  // first slope == last slope
};

/// Random validated PL function with period 1: piece count uniform in
/// [min_pieces, max_pieces], breakpoints with denominators <= 24, nonzero
/// integer slopes in [-5, 5]. Intercepts stack the piece images with
/// positive gaps when injectivity is requested; candidates failing the
/// requested shape are rejected and redrawn.
PiecewiseLinear random_pl(Rng& rng, std::size_t min_pieces, std::size_t max_pieces,
                          FunctionShape shape);

struct SweepOptions {
  std::string statement;
  std::size_t draws = 100;
  std::size_t max_pieces = 4;
  std::size_t max_count = 2000;  // largest N drawn
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  ToleranceContext ctx = ToleranceContext::approx();
};

struct SweepRow {
  std::size_t draw = 0;
  VerificationReport report;
};

struct SweepResult {
  std::string statement;
  std::vector<SweepRow> rows;  // in draw order
  std::size_t max_observed = 0;
  std::size_t failures = 0;
  double pass_rate() const;
};

/// One verifier call per draw. Rows come back in draw order regardless of
/// `threads`, so a fixed seed gives identical results.
SweepResult run_sweep(const SweepOptions& options);

/// Statement ids that run_sweep accepts.
const std::vector<std::string>& sweepable_statements();

/// Draws the parameters for one sweep draw and runs its verifier.
VerificationReport sweep_draw(const SweepOptions& options, std::size_t index);

}  // namespace gaplab
