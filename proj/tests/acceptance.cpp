// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gaplab/error.hpp"
#include "gaplab/gap_core.hpp"
#include "gaplab/parse.hpp"
#include "gaplab/sweep.hpp"
#include "gaplab/theorem_suite.hpp"

using namespace gaplab;

namespace {

using Clock = std::chrono::steady_clock;

Scalar q(long p, long d) { return Scalar::ratio(p, d); }
Scalar approx(const char* text) { return parse_scalar(text, Mode::approx); }

// A PL instance kept around for the affine-invariance check.
struct PlInstance {
  PiecewiseLinear f;
  Scalar alpha;
  Scalar beta;
  std::size_t count;
  ToleranceContext ctx;
};

struct Collected {
  std::vector<GapReport> reports;
  std::vector<PlInstance> instances;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report_line(int id, const std::string& title, double limit_s,
                 const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " [over time limit " + std::to_string(limit_s) + " s]";
  }
  if (!o.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << " (" << timing << ")";
  if (!o.detail.empty()) std::cout << ": " << o.detail;
  std::cout << std::endl;
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string join(const std::vector<Scalar>& xs, int digits = 7) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s << ", ";
    s << (xs[i].is_exact() ? xs[i].to_string() : xs[i].real().to_string(digits));
  }
  s << "}";
  return s.str();
}

Outcome criterion_cosine(Collected& seen) {
  Outcome o;
  const auto ctx = ToleranceContext::approx();
  const auto check = [&](const PeriodicFunction& f, const double (&want)[3]) {
    const GapReport r = gap_report(f, q(1, 4), 0L, 3, ctx);
    seen.reports.push_back(r);
    if (r.gap_count() != 3) return fail(o, "gap count " + std::to_string(r.gap_count()));
    for (int i = 0; i < 3; ++i)
      if (std::abs(r.gap_set[i].to_double() - want[i]) > 5e-5) fail(o, "got " + join(r.gap_set));
    o.detail += (o.detail.empty() ? "" : "; ") + join(r.gap_set, 5);
  };
  check(cosine(), {0.0913, 0.1459, 1.7628});
  check(builtin("shifted_cosine(pi/2)"), {0.2022, 0.2320, 1.5658});
  return o;
}

Outcome criterion_worked_example(Collected& seen) {
  const auto f = PiecewiseLinear::validate(
      {Piece{0L, q(3, 4), false, 1L, 1L}, Piece{q(3, 4), 1L, false, 1L, q(-1, 2)}}, 1L);
  const auto ctx = ToleranceContext::approx();
  const VerificationReport r = verify_general_bound(f, approx("pi/16"), 7, ctx);
  seen.reports.push_back(*r.witness);
  seen.instances.push_back({f, approx("pi/16"), 0L, 7, ctx});
  Outcome o;
  o.pass = r.observed == 5 && r.upper_bound == std::size_t{5};
  o.detail = "|G| = " + std::to_string(r.observed) + " (expected 5), bound " +
             std::to_string(*r.upper_bound) + ", lengths " + join(r.witness->gap_set);
  return o;
}

Outcome criterion_main_construction(Collected& seen) {
  Outcome o;
  const auto ctx = ToleranceContext::exact();
  std::size_t smallest_margin = SIZE_MAX;
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto c = construct_unbounded_pl(n);
    const auto r = verify_unbounded_construction(c, ctx);
    smallest_margin = std::min(smallest_margin, r.observed - std::min(r.observed, n));
    seen.reports.push_back(*r.witness);
    seen.instances.push_back({c.function, c.alpha, 0L, c.count, ctx});
    if (r.observed <= n) fail(o, "n=" + std::to_string(n) + ": |G| = " + std::to_string(r.observed));
    if (!contains_ladder(*r.witness, c)) fail(o, "n=" + std::to_string(n) + ": ladder missing");
    if (r.witness->mode != Mode::exact) fail(o, "n=" + std::to_string(n) + ": not exact");
  }
  if (o.pass) o.detail = "n = 1..50, ladder present, min(|G| - n) = " + std::to_string(smallest_margin);
  return o;
}

Outcome criterion_c2_construction(Collected& seen) {
  Outcome o;
  const auto ctx = ToleranceContext::approx(256);
  const Scalar pi = Scalar(Real::pi(256));
  std::size_t smallest_margin = SIZE_MAX;
  for (std::size_t n = 1; n <= 50; ++n) {
    const Scalar alpha = pi / Scalar(static_cast<long>(2 * (n + 1)));
    const GapReport r = gap_report(cosine(256), alpha, 0L, n + 1, ctx);
    seen.reports.push_back(r);
    if (r.gap_count() < n) fail(o, "n=" + std::to_string(n) + ": |G| = " + std::to_string(r.gap_count()));
    smallest_margin = std::min(smallest_margin, r.gap_count() - std::min(r.gap_count(), n));
    // The constructed witness must pick the same alpha.
    const auto [w, v] = construct_c2_witness(cosine(256), n, ctx);
    if (!eq_tol(w.alpha, alpha, ctx)) fail(o, "n=" + std::to_string(n) + ": witness alpha differs");
    if (!v.pass) fail(o, "n=" + std::to_string(n) + ": witness report fails");
  }
  if (o.pass) o.detail = "n = 1..50, min(|G| - n) = " + std::to_string(smallest_margin);
  return o;
}

Outcome criterion_three_gap(Collected&) {
  Outcome o;
  const auto ctx = ToleranceContext::approx();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng = draw_rng(5, i);
    const Scalar alpha = random_unit_real(rng, 256);
    const std::size_t count = 1 + rng() % 5000;
    const auto r = verify_three_gap(alpha, count, ctx);
    worst = std::max(worst, r.observed);
    if (!r.pass) fail(o, "draw " + std::to_string(i) + ": " + std::to_string(r.observed) + " lengths");
  }
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng = draw_rng(55, i);
    const Scalar alpha = random_unit_rational(rng, 1000);
    const std::size_t count = 1 + rng() % 5000;
    const auto r = verify_three_gap(alpha, count, ToleranceContext::exact());
    worst = std::max(worst, r.observed);
    if (!r.pass) fail(o, "rational draw " + std::to_string(i) + ": " + std::to_string(r.observed));
    for (const Scalar& len : r.circle_lengths)
      if (!len.is_exact()) fail(o, "rational draw " + std::to_string(i) + " left exact mode");
  }
  if (o.pass) o.detail = "1000 approx + 100 exact draws, max " + std::to_string(worst);
  return o;
}

Outcome criterion_general(Collected& seen) {
  Outcome o;
  const auto ctx = ToleranceContext::approx();
  std::size_t tightened = 0, attained = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    Rng rng = draw_rng(6, i);
    const bool shaped = i % 5 == 0;
    const FunctionShape shape{.injective = true, .monotone = shaped, .equal_end_slopes = shaped};
    const PiecewiseLinear f = random_pl(rng, 2, 5, shape);
    const Scalar alpha = random_unit_real(rng, 256);
    const std::size_t count = 1 + rng() % 2000;
    const auto r = verify_general_bound(f, alpha, count, ctx);
    seen.reports.push_back(*r.witness);
    seen.instances.push_back({f, alpha, 0L, count, ctx});
    if (!r.pass) fail(o, "draw " + std::to_string(i) + ": " + std::to_string(r.observed) + " > " +
                             std::to_string(*r.upper_bound));
    if (r.observed == *r.upper_bound) ++attained;
    if (shaped) {
      ++tightened;
      const auto t = verify_tightened_bound(f, alpha, count, ctx);
      if (!t.pass) fail(o, "tightened draw " + std::to_string(i) + ": " + std::to_string(t.observed));
    }
  }
  if (o.pass)
    o.detail = "500 functions (" + std::to_string(tightened) + " tightened), bound attained " +
               std::to_string(attained) + " times";
  return o;
}

Outcome criterion_five_distance(Collected&) {
  Outcome o;
  const auto ctx = ToleranceContext::approx();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    Rng rng = draw_rng(7, i);
    const Scalar alpha = random_unit_real(rng, 256);
    const Scalar beta = random_unit_real(rng, 256);
    const std::size_t count = 1 + rng() % 1000;
    const auto r = verify_five_distance(alpha, beta, count, ctx);
    worst = std::max(worst, r.observed);
    if (!r.pass) fail(o, "draw " + std::to_string(i) + ": " + std::to_string(r.observed));
  }
  if (o.pass) o.detail = "300 draws, max " + std::to_string(worst);
  return o;
}

Outcome criterion_shift_and_triangle(Collected& seen) {
  Outcome o;
  const auto ctx = ToleranceContext::approx();
  std::size_t worst_shift = 0, tri_lo = SIZE_MAX, tri_hi = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    Rng rng = draw_rng(8, i);
    Scalar kappa = random_unit_real(rng, 256);
    Scalar shift = random_unit_real(rng, 256);
    if (shift > kappa) std::swap(shift, kappa);
    const Scalar alpha = random_unit_real(rng, 256);
    const std::size_t count = 1 + rng() % 2000;
    const auto r = verify_two_piece_shift(kappa, shift, alpha, count, ctx);
    seen.reports.push_back(*r.witness);
    seen.instances.push_back({*r.function, alpha, 0L, count, ctx});
    worst_shift = std::max(worst_shift, r.observed);
    if (!r.pass) fail(o, "shift draw " + std::to_string(i) + ": " + std::to_string(r.observed));
  }
  for (std::size_t i = 0; i < 300; ++i) {
    Rng rng = draw_rng(88, i);
    const Scalar alpha = random_unit_real(rng, 256);
    const std::size_t count = 2 + rng() % 4999;
    const auto r = verify_triangle_bounds(alpha, count, ctx);
    seen.reports.push_back(*r.witness);
    tri_lo = std::min(tri_lo, r.observed);
    tri_hi = std::max(tri_hi, r.observed);
    if (!r.pass) fail(o, "triangle draw " + std::to_string(i) + ": " + std::to_string(r.observed));
  }
  if (o.pass)
    o.detail = "shift max " + std::to_string(worst_shift) + "; triangle range " +
               std::to_string(tri_lo) + ".." + std::to_string(tri_hi);
  return o;
}

Outcome criterion_invariants(const Collected& seen) {
  Outcome o;
  std::size_t exact_reports = 0;
  for (std::size_t i = 0; i < seen.reports.size(); ++i) {
    const GapReport& r = seen.reports[i];
    Scalar sum(0L);
    for (const GapEntry& e : r.entries) sum = sum + e.length;
    const Scalar span = r.extrema.sup_value - r.extrema.inf_value;
    if (r.mode == Mode::exact) {
      ++exact_reports;
      if (sum != span) fail(o, "report " + std::to_string(i) + ": exact sum mismatch");
    } else {
      const Scalar slack = Scalar(r.ctx.tolerance()) * Scalar(static_cast<long>(r.n()));
      if (abs(sum - span) > slack) fail(o, "report " + std::to_string(i) + ": sum off by " + abs(sum - span).to_string());
    }
  }
  Rng rng(9);
  for (std::size_t t = 0; t < 100; ++t) {
    const PlInstance& inst = seen.instances[rng() % seen.instances.size()];
    Scalar c1 = random_rational(rng, -5, 5, 9);
    if (c1.is_zero()) c1 = q(1, 2);
    const Scalar c2 = random_rational(rng, -5, 5, 9);
    const std::size_t before = gap_report(inst.f, inst.alpha, inst.beta, inst.count, inst.ctx).gap_count();
    const std::size_t after =
        gap_report(inst.f.affine_image(c1, c2), inst.alpha, inst.beta, inst.count, inst.ctx).gap_count();
    if (before != after)
      fail(o, "transform " + std::to_string(t) + ": " + std::to_string(before) + " -> " + std::to_string(after));
  }
  if (o.pass)
    o.detail = std::to_string(seen.reports.size()) + " reports (" + std::to_string(exact_reports) +
               " exact), 100 affine transforms";
  return o;
}

Outcome criterion_cross_oracle() {
  Outcome o;
  const auto exact = ToleranceContext::exact();
  const auto ctx = ToleranceContext::approx(256);
  const Real limit = Real::parse("1e-25", 256);
  Real worst(0L, 256);
  for (std::size_t i = 0; i < 200; ++i) {
    Rng rng = draw_rng(10, i);
    const PiecewiseLinear f = random_pl(rng, 1, 5, {});
    const Scalar alpha = random_unit_rational(rng, 1000);
    const Scalar beta = random_unit_rational(rng, 100);
    const std::size_t count = 1 + rng() % 1000;
    const GapReport e = gap_report(f, alpha, beta, count, exact);
    const GapReport a = gap_report(f, Scalar(alpha.to_real(256)), Scalar(beta.to_real(256)), count, ctx);
    if (e.mode != Mode::exact || a.mode != Mode::approx) fail(o, "instance " + std::to_string(i) + ": wrong mode");
    if (e.gap_count() != a.gap_count()) {
      fail(o, "instance " + std::to_string(i) + ": " + std::to_string(e.gap_count()) + " vs " +
                  std::to_string(a.gap_count()));
      continue;
    }
    for (std::size_t k = 0; k < e.gap_count(); ++k) {
      const Real d = abs(a.gap_set[k].real() - Real(e.gap_set[k].rational(), 256));
      if (d > worst) worst = d;
      if (d > limit) fail(o, "instance " + std::to_string(i) + ": length differs by " + d.to_string(3));
    }
  }
  if (o.pass) o.detail = "200 instances, max length difference " + worst.to_string(3);
  return o;
}

}  // namespace

int main() {
  Collected seen;
  report_line(1, "cosine gap sets", 1.0, [&] { return criterion_cosine(seen); });
  report_line(2, "two-piece worked example has exactly 5 lengths", 1.0,
              [&] { return criterion_worked_example(seen); });
  report_line(3, "unbounded PL construction n = 1..50", 10.0,
              [&] { return criterion_main_construction(seen); });
  report_line(4, "cosine construction n = 1..50", 10.0, [&] { return criterion_c2_construction(seen); });
  report_line(5, "three distance property suite", 60.0, [&] { return criterion_three_gap(seen); });
  report_line(6, "general and tightened bound suite", 120.0, [&] { return criterion_general(seen); });
  report_line(7, "five distance suite", 60.0, [&] { return criterion_five_distance(seen); });
  report_line(8, "two-piece shift and triangle suites", 60.0,
              [&] { return criterion_shift_and_triangle(seen); });
  report_line(9, "structural invariants", 0, [&] { return criterion_invariants(seen); });
  report_line(10, "exact/approx cross-check", 0, [] { return criterion_cross_oracle(); });
  std::cout << (10 - failures) << "/10 criteria pass" << std::endl;
  return failures;
}
