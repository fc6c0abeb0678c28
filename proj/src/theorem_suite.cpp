#include "gaplab/theorem_suite.hpp"

#include <algorithm>
#include <string>

#include "gaplab/error.hpp"

namespace gaplab {

bool VerificationReport::bounds_hold() const {
  if (lower_bound && observed < *lower_bound) return false;
  if (upper_bound && observed > *upper_bound) return false;
  return true;
}

namespace {

Scalar count_scalar(std::size_t k) { return Scalar(static_cast<long>(k)); }

VerificationReport finish(VerificationReport report) {
  report.pass = report.bounds_hold();
  return report;
}

VerificationReport from_gaps(std::string id, std::vector<Parameter> params, GapReport gaps,
                             std::optional<std::size_t> lower,
                             std::optional<std::size_t> upper) {
  VerificationReport r;
  r.statement = std::move(id);
  r.parameters = std::move(params);
  r.lower_bound = lower;
  r.upper_bound = upper;
  r.observed = gaps.gap_count();
  r.witness = std::move(gaps);
  return finish(std::move(r));
}

void require_count(std::size_t count) {
  if (count == 0) throw Error(ErrorKind::invalid_argument, "N must be at least 1");
}

}  // namespace

VerificationReport verify_three_gap(const Scalar& alpha, std::size_t count,
                                    const ToleranceContext& ctx) {
  require_count(count);
  const auto points = frac_orbit(alpha, Scalar(0L), 1, count, ctx);
  VerificationReport r;
  r.statement = statement::three_gap;
  r.parameters = {{"alpha", alpha}, {"N", count_scalar(count)}};
  r.upper_bound = 3;
  r.circle_lengths = circle_gaps(points, ctx);
  r.observed = distinct_lengths(r.circle_lengths, ctx).size();
  return finish(std::move(r));
}

VerificationReport verify_affine(const Scalar& slope, const Scalar& intercept,
                                 const Scalar& alpha, const Scalar& beta, std::size_t count,
                                 const ToleranceContext& ctx) {
  require_count(count);
  const PiecewiseLinear f =
      PiecewiseLinear::validate({Piece{0L, 1L, false, slope, intercept}}, 1L);
  auto r = from_gaps(statement::affine,
                     {{"m", slope}, {"c", intercept}, {"alpha", alpha}, {"beta", beta},
                      {"N", count_scalar(count)}},
                     classify_gaps(gap_report(f, alpha, beta, count, ctx), f), std::nullopt, 3);
  r.function = f;
  return r;
}

VerificationReport verify_general_bound(const PiecewiseLinear& f, const Scalar& alpha,
                                        std::size_t count, const ToleranceContext& ctx) {
  require_count(count);
  if (!f.injective_on_fd()) {
    throw Error(ErrorKind::precondition_violation,
                "the 3*mu + l bound is only claimed for injective functions");
  }
  const SlopeStats stats = f.slope_stats();
  const std::size_t bound = 3 * stats.distinct_magnitudes + stats.pieces;
  auto r = from_gaps(statement::general,
                     {{"alpha", alpha},
                      {"N", count_scalar(count)},
                      {"l", count_scalar(stats.pieces)},
                      {"mu", count_scalar(stats.distinct_magnitudes)}},
                     classify_gaps(gap_report(f, alpha, 0L, count, ctx), f), std::nullopt, bound);
  r.function = f;
  return r;
}

VerificationReport verify_tightened_bound(const PiecewiseLinear& f, const Scalar& alpha,
                                          std::size_t count, const ToleranceContext& ctx) {
  require_count(count);
  if (!f.injective_on_fd() || !f.monotone_on_fd()) {
    throw Error(ErrorKind::precondition_violation,
                "tightened bound needs an injective, monotone function");
  }
  if (f.pieces().front().slope != f.pieces().back().slope) {
    throw Error(ErrorKind::precondition_violation,
                "tightened bound needs equal first and last slopes");
  }
  const SlopeStats stats = f.slope_stats();
  const std::size_t bound = 3 * stats.distinct_magnitudes + stats.pieces - 1;
  auto r = from_gaps(statement::tightened,
                     {{"alpha", alpha},
                      {"N", count_scalar(count)},
                      {"l", count_scalar(stats.pieces)},
                      {"mu", count_scalar(stats.distinct_magnitudes)}},
                     classify_gaps(gap_report(f, alpha, 0L, count, ctx), f), std::nullopt, bound);
  r.function = f;
  return r;
}

PiecewiseLinear two_piece_shift_function(const Scalar& kappa, const Scalar& shift) {
  if (!(shift.sign() > 0 && shift <= kappa && kappa < Scalar(1L))) {
    throw Error(ErrorKind::invalid_argument, "need 0 < beta <= kappa < 1");
  }
  return PiecewiseLinear::validate(
      {Piece{0L, kappa, false, 1L, 0L}, Piece{kappa, 1L, false, 1L, -shift}}, 1L);
}

VerificationReport verify_two_piece_shift(const Scalar& kappa, const Scalar& shift,
                                          const Scalar& alpha, std::size_t count,
                                          const ToleranceContext& ctx) {
  require_count(count);
  const PiecewiseLinear f = two_piece_shift_function(kappa, shift);
  auto r = from_gaps(statement::two_piece_shift,
                     {{"kappa", kappa}, {"beta", shift}, {"alpha", alpha},
                      {"N", count_scalar(count)}},
                     classify_gaps(gap_report(f, alpha, 0L, count, ctx), f), std::nullopt, 10);
  r.function = f;
  return r;
}

VerificationReport verify_triangle_bounds(const Scalar& alpha, std::size_t count,
                                          const ToleranceContext& ctx) {
  if (alpha.is_exact()) {
    throw Error(ErrorKind::precondition_violation,
                "triangle lower bound is only claimed for irrational (approx) alpha");
  }
  if (count < 2) throw Error(ErrorKind::precondition_violation, "triangle bounds need N >= 2");
  const PiecewiseLinear f = triangle_wave();
  auto r = from_gaps(statement::triangle, {{"alpha", alpha}, {"N", count_scalar(count)}},
                     classify_gaps(gap_report(f, alpha, 0L, count, ctx), f), 2, 4);
  r.function = f;
  return r;
}

VerificationReport verify_five_distance(const Scalar& alpha, const Scalar& beta,
                                        std::size_t count, const ToleranceContext& ctx) {
  require_count(count);
  if (eq_tol(beta, Scalar(0L), ctx)) {
    throw Error(ErrorKind::precondition_violation, "beta must be non-zero");
  }
  VerificationReport r;
  r.statement = statement::five_distance;
  r.parameters = {{"alpha", alpha}, {"beta", beta}, {"N", count_scalar(count)}};
  r.upper_bound = 5;
  r.circle_lengths = two_orbit_circle_gaps(alpha, beta, count, ctx);
  r.observed = distinct_lengths(r.circle_lengths, ctx).size();
  return finish(std::move(r));
}

// ------------------------------------------------------- constructions

PiecewiseLinear unbounded_pl_function(const Scalar& epsilon) {
  const Scalar half = Scalar::ratio(1, 2);
  const Scalar steep = Scalar(1L) + epsilon;
  return PiecewiseLinear::validate(
      {Piece{0L, half, true, 1L, 0L}, Piece{half, 1L, false, steep, -(steep * half)}}, 1L);
}

UnboundedConstruction construct_unbounded_pl(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "n must be at least 1");
  const std::size_t count = 2 * n + 4;
  const Scalar epsilon = Scalar::ratio(1, static_cast<long>(count - 3));
  return UnboundedConstruction{unbounded_pl_function(epsilon), epsilon,
                               Scalar::ratio(1, static_cast<long>(count)), count, n};
}

std::vector<Scalar> construction_ladder(const UnboundedConstruction& c) {
  std::vector<Scalar> out;
  const Scalar step = c.epsilon / count_scalar(c.count);
  for (std::size_t k = 1; k <= c.count / 2 - 1; ++k) {
    out.push_back(count_scalar(k) * step);
  }
  return out;
}

bool contains_ladder(const GapReport& report, const UnboundedConstruction& c) {
  for (const Scalar& length : construction_ladder(c)) {
    const bool found = std::any_of(report.gap_set.begin(), report.gap_set.end(),
                                   [&](const Scalar& g) { return eq_tol(g, length, report.ctx); });
    if (!found) return false;
  }
  return true;
}

VerificationReport verify_unbounded_construction(const UnboundedConstruction& c,
                                                 const ToleranceContext& ctx) {
  GapReport gaps = classify_gaps(gap_report(c.function, c.alpha, 0L, c.count, ctx), c.function);
  const bool ladder = contains_ladder(gaps, c);
  auto r = from_gaps(statement::main_construction,
                     {{"n", count_scalar(c.n)},
                      {"N", count_scalar(c.count)},
                      {"epsilon", c.epsilon},
                      {"alpha", c.alpha}},
                     std::move(gaps), c.n + 1, std::nullopt);
  r.function = c.function;
  r.pass = r.pass && ladder;
  return r;
}

// ------------------------------------------------------- root finding

std::optional<Real> find_first_zero(const RealFn& g, const Real& lo, const Real& hi,
                                    std::size_t grid_points, const Real& tol) {
  if (!(lo < hi)) throw Error(ErrorKind::invalid_argument, "find_first_zero needs lo < hi");
  if (grid_points < 2) throw Error(ErrorKind::invalid_argument, "need at least 2 grid points");
  const unsigned bits = std::max(lo.bits(), hi.bits());
  const Real width = hi - lo;
  const Real steps(static_cast<long>(grid_points - 1), bits);

  Real prev_x = lo;
  Real prev_g = g(lo);
  if (abs(prev_g) <= tol) return lo;
  for (std::size_t k = 1; k < grid_points; ++k) {
    Real x = k + 1 == grid_points ? hi : lo + width * Real(static_cast<long>(k), bits) / steps;
    Real gx = g(x);
    if (abs(gx) <= tol) return x;
    if (gx.sign() != prev_g.sign()) {
      // Bisect [prev_x, x]; g(a) keeps the sign of prev_g.
      Real a = prev_x;
      Real b = x;
      const Real two(2L, bits);
      while (b - a > tol) {
        Real mid = (a + b) / two;
        if (mid == a || mid == b) break;  // precision exhausted
        const Real gm = g(mid);
        if (gm.is_zero()) return mid;
        if (gm.sign() == prev_g.sign()) a = std::move(mid);
        else b = std::move(mid);
      }
      return (a + b) / two;
    }
    prev_x = std::move(x);
    prev_g = std::move(gx);
  }
  return std::nullopt;
}

std::pair<C2Witness, VerificationReport> construct_c2_witness(const AnalyticPeriodic& f,
                                                              std::size_t n,
                                                              const ToleranceContext& ctx,
                                                              std::size_t grid_points) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "n must be at least 1");
  const unsigned bits = std::max(f.bits, ctx.precision_bits());
  const Real tol = ctx.tolerance();
  const Real zero(bits);
  if (abs(f.d2f(zero)) <= tol) {
    throw Error(ErrorKind::hypothesis_violation, f.name + ": f''(0) = 0, hypothesis fails");
  }
  const auto inflection = find_first_zero(f.d2f, zero, f.period.to_real(bits), grid_points, tol);
  if (!inflection) throw Error(ErrorKind::search_failure, f.name + ": f'' has no zero on [0, P]");
  const auto critical = find_first_zero(f.df, zero, *inflection, grid_points, tol);

  C2Witness w;
  w.n = n;
  w.first_inflection = Scalar(*inflection);
  // With no zero of f' on [0, I] the infimum is over an empty set; fall back to I.
  const bool critical_at_zero = !critical || abs(*critical) <= tol;
  w.first_critical = critical ? Scalar(*critical) : Scalar(zero);
  const Real base = critical_at_zero ? *inflection : *critical;
  w.alpha = Scalar(base / Real(static_cast<long>(n + 1), bits));

  auto r = from_gaps(statement::c2_construction,
                     {{"n", count_scalar(n)},
                      {"N", count_scalar(n + 1)},
                      {"I", w.first_inflection},
                      {"I_prime", w.first_critical},
                      {"alpha", w.alpha}},
                     gap_report(f, w.alpha, 0L, n + 1, ctx), n, std::nullopt);
  return {std::move(w), std::move(r)};
}

}  // namespace gaplab
