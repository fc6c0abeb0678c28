#include "gaplab/gap_core.hpp"

#include <algorithm>
#include <numeric>

#include "gaplab/error.hpp"

namespace gaplab {

std::string_view to_string(GapKind kind) {
  switch (kind) {
    case GapKind::unclassified: return "unclassified";
    case GapKind::interior: return "interior";
    case GapKind::non_interior: return "non_interior";
    case GapKind::extremal: return "extremal";
  }
  return "unknown";
}

std::vector<OrbitSample> orbit(const PeriodicFunction& f, const Scalar& alpha,
                               const Scalar& beta, std::size_t count,
                               const ToleranceContext& ctx) {
  if (count == 0) throw Error(ErrorKind::invalid_argument, "N must be at least 1");
  std::vector<OrbitSample> out;
  out.reserve(count);
  const Scalar& p = period(f);
  const auto* pl = std::get_if<PiecewiseLinear>(&f);
  for (std::size_t d = 1; d <= count; ++d) {
    const Scalar x = Scalar(static_cast<long>(d)) * alpha + beta;
    OrbitSample sample;
    sample.d = d;
    sample.x_reduced = reduce_mod_period(x, p);
    if (pl != nullptr) {
      sample.x_reduced = pl->snap(sample.x_reduced, ctx);
      const std::size_t i = pl->locate(sample.x_reduced);
      sample.piece = i;
      sample.value = pl->pieces()[i].value_at(sample.x_reduced);
    } else {
      sample.value = std::get<AnalyticPeriodic>(f).eval(sample.x_reduced);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

std::vector<Scalar> GapReport::gap_multiset() const {
  std::vector<Scalar> out;
  out.reserve(entries.size());
  for (const GapEntry& e : entries) out.push_back(e.length);
  return out;
}

GapReport gap_report_from_samples(std::span<const OrbitSample> samples,
                                  const FunctionExtrema& extrema,
                                  const ToleranceContext& ctx) {
  if (samples.empty()) throw Error(ErrorKind::invalid_argument, "no orbit samples");

  std::vector<const OrbitSample*> order;
  order.reserve(samples.size());
  for (const OrbitSample& s : samples) order.push_back(&s);
  // Tie-break on d so the grouping does not depend on input order.
  std::sort(order.begin(), order.end(), [](const OrbitSample* a, const OrbitSample* b) {
    const auto c = a->value <=> b->value;
    return c != 0 ? c < 0 : a->d < b->d;
  });

  GapReport report;
  report.extrema = extrema;
  report.ctx = ctx;
  for (const OrbitSample* s : order) {
    if (report.values.empty() || !eq_tol(report.values.back().value, s->value, ctx)) {
      report.values.push_back(ValueGroup{s->value, {}, {}});
    }
    ValueGroup& g = report.values.back();
    g.ds.push_back(s->d);
    if (s->piece) g.pieces.push_back(*s->piece);
  }
  for (ValueGroup& g : report.values) {
    std::sort(g.ds.begin(), g.ds.end());
    std::sort(g.pieces.begin(), g.pieces.end());
    g.pieces.erase(std::unique(g.pieces.begin(), g.pieces.end()), g.pieces.end());
  }

  const auto& vals = report.values;
  for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
    report.entries.push_back(
        GapEntry{vals[j].value, vals[j + 1].value, vals[j + 1].value - vals[j].value});
  }
  const Scalar& s1 = vals.front().value;
  const Scalar& sn = vals.back().value;
  report.entries.push_back(GapEntry{s1, sn, s1 - extrema.inf_value + extrema.sup_value - sn,
                                    GapKind::extremal, std::nullopt});

  report.gap_set = distinct_lengths(report.gap_multiset(), ctx);

  const bool all_exact =
      extrema.inf_value.is_exact() && extrema.sup_value.is_exact() &&
      std::all_of(report.entries.begin(), report.entries.end(),
                  [](const GapEntry& e) { return e.length.is_exact(); }) &&
      std::all_of(vals.begin(), vals.end(), [](const ValueGroup& g) { return g.value.is_exact(); });
  report.mode = all_exact ? Mode::exact : Mode::approx;
  return report;
}

GapReport gap_report(const PeriodicFunction& f, const Scalar& alpha, const Scalar& beta,
                     std::size_t count, const ToleranceContext& ctx) {
  const auto samples = orbit(f, alpha, beta, count, ctx);
  GapReport report = gap_report_from_samples(samples, extrema(f), ctx);
  if (!alpha.is_exact() || !beta.is_exact()) report.mode = Mode::approx;
  return report;
}

GapReport classify_gaps(GapReport report, const PeriodicFunction& f) {
  if (!std::holds_alternative<PiecewiseLinear>(f)) {
    throw Error(ErrorKind::unsupported, "gap classification needs a piecewise-linear function");
  }
  for (const ValueGroup& g : report.values) {
    if (g.pieces.empty()) {
      throw Error(ErrorKind::unsupported, "report carries no piece annotations");
    }
  }
  for (std::size_t j = 0; j + 1 < report.entries.size(); ++j) {
    const auto& lo = report.values[j].pieces;
    const auto& hi = report.values[j + 1].pieces;
    std::vector<std::size_t> shared;
    std::set_intersection(lo.begin(), lo.end(), hi.begin(), hi.end(), std::back_inserter(shared));
    GapEntry& e = report.entries[j];
    if (shared.empty()) {
      e.kind = GapKind::non_interior;
      e.piece.reset();
    } else {
      e.kind = GapKind::interior;
      e.piece = shared.front();
    }
  }
  return report;
}

std::vector<Scalar> distinct_lengths(std::vector<Scalar> lengths, const ToleranceContext& ctx) {
  std::sort(lengths.begin(), lengths.end());
  return cluster_distinct(lengths, ctx);
}

std::vector<Scalar> circle_gaps(std::span<const Scalar> points, const ToleranceContext& ctx) {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "circle_gaps needs a point");
  for (const Scalar& p : points) {
    if (p.sign() < 0 || p >= Scalar(1L)) {
      throw Error(ErrorKind::invalid_argument, "point " + p.to_string() + " outside [0, 1)");
    }
  }
  std::vector<Scalar> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Scalar> reps = cluster_distinct(sorted, ctx);
  // A point a hair below 1 coincides with 0 on the circle.
  while (reps.size() > 1 && eq_tol(reps.back(), reps.front() + Scalar(1L), ctx)) reps.pop_back();

  std::vector<Scalar> out;
  out.reserve(reps.size());
  for (std::size_t i = 0; i + 1 < reps.size(); ++i) out.push_back(reps[i + 1] - reps[i]);
  out.push_back(Scalar(1L) - (reps.back() - reps.front()));
  return out;
}

std::vector<Scalar> frac_orbit(const Scalar& alpha, const Scalar& beta, std::size_t first,
                               std::size_t last, const ToleranceContext& ctx) {
  std::vector<Scalar> out;
  if (last < first) return out;
  out.reserve(last - first + 1);
  const Scalar one(1L);
  for (std::size_t d = first; d <= last; ++d) {
    Scalar x = frac(Scalar(static_cast<long>(d)) * alpha + beta);
    if (!x.is_exact() && eq_tol(x, one, ctx)) x = Scalar(0L);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Scalar> two_orbit_circle_gaps(const Scalar& alpha, const Scalar& beta,
                                          std::size_t count, const ToleranceContext& ctx) {
  if (count == 0) throw Error(ErrorKind::invalid_argument, "N must be at least 1");
  std::vector<Scalar> points = frac_orbit(alpha, Scalar(0L), 0, count, ctx);
  std::vector<Scalar> shifted = frac_orbit(alpha, beta, 0, count, ctx);
  points.insert(points.end(), std::make_move_iterator(shifted.begin()),
                std::make_move_iterator(shifted.end()));
  return circle_gaps(points, ctx);
}

}  // namespace gaplab
