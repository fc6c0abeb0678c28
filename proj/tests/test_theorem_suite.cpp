#include "doctest.h"

#include "gaplab/error.hpp"
#include "gaplab/parse.hpp"
#include "gaplab/theorem_suite.hpp"
#include "oracle.hpp"

using namespace gaplab;

namespace {

Scalar q(long p, long d) { return Scalar::ratio(p, d); }
Scalar approx(const char* text) { return parse_scalar(text, Mode::approx); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::unsupported;
}

const ToleranceContext& actx() {
  static const ToleranceContext ctx = ToleranceContext::approx();
  return ctx;
}

}  // namespace

TEST_CASE("three distance examples") {
  for (const char* alpha : {"sqrt2-1", "0.7310585", "sqrt2"}) {
    CAPTURE(alpha);
    const std::size_t count = std::string(alpha) == "sqrt2-1" ? 10 : 5000;
    const auto r = verify_three_gap(approx(alpha), count, actx());
    CHECK(r.pass);
    CHECK(r.observed == 3);
    CHECK(r.upper_bound == std::size_t{3});
    CHECK(r.statement == statement::three_gap);
  }
  const auto rational = verify_three_gap(q(3, 7), 20, ToleranceContext::exact());
  CHECK(rational.pass);
  CHECK(distinct_lengths(rational.circle_lengths, ToleranceContext::exact()) == std::vector<Scalar>{q(1, 7)});
  CHECK(verify_three_gap(q(1, 7), 7, ToleranceContext::exact()).observed == 1);
}

TEST_CASE("affine maps") {
  const auto r = verify_affine(-2L, 1L, approx("sqrt2-1"), approx("0.3"), 50, actx());
  CHECK(r.pass);
  CHECK(r.observed == 3);
  const auto flat = verify_affine(0L, 5L, q(1, 3), 0L, 5, ToleranceContext::exact());
  CHECK(flat.observed == 1);
  CHECK(flat.pass);
  const auto scaled = verify_affine(3L, 0L, q(1, 4), 0L, 3, ToleranceContext::exact());
  CHECK(scaled.witness->gap_set == std::vector<Scalar>{q(3, 4), q(3, 2)});
}

TEST_CASE("general bound") {
  const auto worked = PiecewiseLinear::validate(
      {Piece{0L, q(3, 4), false, 1L, 1L}, Piece{q(3, 4), 1L, false, 1L, q(-1, 2)}}, 1L);
  const auto r = verify_general_bound(worked, approx("pi/16"), 7, actx());
  CHECK(r.upper_bound == std::size_t{5});
  CHECK(r.observed == 4);
  CHECK(r.pass);
  CHECK(kind_of([] { verify_general_bound(triangle_wave(), q(1, 5), 5, ToleranceContext::exact()); }) ==
        ErrorKind::precondition_violation);
}

TEST_CASE("tightened bound") {
  const auto two = PiecewiseLinear::validate(
      {Piece{0L, q(1, 2), false, 1L, 0L}, Piece{q(1, 2), 1L, false, 1L, q(1, 4)}}, 1L);
  const auto r2 = verify_tightened_bound(two, approx("sqrt2-1"), 40, actx());
  CHECK(r2.upper_bound == std::size_t{4});
  CHECK(r2.observed == 4);
  CHECK(r2.pass);

  const auto three = PiecewiseLinear::validate({Piece{0L, q(1, 3), false, 1L, 0L},
                                                Piece{q(1, 3), q(2, 3), false, 2L, q(-1, 3)},
                                                Piece{q(2, 3), 1L, false, 1L, q(1, 3)}},
                                               1L);
  const auto r3 = verify_tightened_bound(three, approx("phi-1"), 300, actx());
  CHECK(r3.upper_bound == std::size_t{8});
  CHECK(r3.observed == 8);  // attained
  CHECK(r3.pass);

  const auto unequal = PiecewiseLinear::validate(
      {Piece{0L, q(1, 2), false, 1L, 0L}, Piece{q(1, 2), 1L, false, 2L, 0L}}, 1L);
  CHECK(kind_of([&] { verify_tightened_bound(unequal, q(1, 5), 5, ToleranceContext::exact()); }) ==
        ErrorKind::precondition_violation);
}

TEST_CASE("two-piece shift") {
  CHECK(verify_two_piece_shift(q(1, 2), q(1, 2), approx("sqrt2-1"), 100, actx()).observed == 3);
  const auto r = verify_two_piece_shift(approx("0.6"), approx("0.3"), approx("pi-3"), 500, actx());
  CHECK(r.observed == 7);
  CHECK(r.upper_bound == std::size_t{10});
  CHECK(r.pass);
  const auto e = verify_two_piece_shift(q(1, 2), q(1, 4), q(1, 8), 8, ToleranceContext::exact());
  CHECK(e.witness->gap_set == std::vector<Scalar>{q(1, 8)});
  CHECK(kind_of([] { two_piece_shift_function(q(1, 2), q(3, 4)); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { two_piece_shift_function(q(1, 2), 0L); }) == ErrorKind::invalid_argument);
}

TEST_CASE("triangle wave") {
  for (const char* alpha : {"sqrt2-1", "e-2", "phi-1"}) {
    const auto r = verify_triangle_bounds(approx(alpha), 1000, actx());
    CHECK(r.observed == 4);
    CHECK(r.pass);
  }
  CHECK(verify_triangle_bounds(approx("sqrt2-1"), 30, actx()).observed == 4);
  CHECK(kind_of([] { verify_triangle_bounds(q(1, 3), 10, ToleranceContext::exact()); }) ==
        ErrorKind::precondition_violation);
  CHECK(kind_of([] { verify_triangle_bounds(approx("sqrt2-1"), 1, actx()); }) ==
        ErrorKind::precondition_violation);
}

TEST_CASE("five distances") {
  CHECK(verify_five_distance(approx("sqrt2"), q(1, 3), 25, actx()).observed == 5);
  CHECK(verify_five_distance(approx("0.3183098"), approx("0.25"), 12, actx()).observed == 5);
  CHECK(verify_five_distance(approx("0.123456"), approx("0.654321"), 200, actx()).observed == 5);
  const auto e = verify_five_distance(q(1, 6), q(1, 12), 6, ToleranceContext::exact());
  CHECK(e.observed == 1);
  CHECK(distinct_lengths(e.circle_lengths, ToleranceContext::exact()) == std::vector<Scalar>{q(1, 12)});
  CHECK(kind_of([] { verify_five_distance(approx("sqrt2"), 0L, 10, actx()); }) ==
        ErrorKind::precondition_violation);
}

TEST_CASE("unbounded construction, small n") {
  const auto c1 = construct_unbounded_pl(1);
  CHECK(c1.count == 6);
  CHECK(c1.epsilon == q(1, 3));
  CHECK(c1.alpha == q(1, 6));
  const auto r1 = verify_unbounded_construction(c1, ToleranceContext::exact());
  CHECK(r1.witness->gap_set == std::vector<Scalar>{q(1, 18), q(1, 9), q(1, 6)});
  CHECK(r1.pass);
  CHECK(construction_ladder(c1) == std::vector<Scalar>{q(1, 18), q(1, 9)});

  const auto r3 = verify_unbounded_construction(construct_unbounded_pl(3), ToleranceContext::exact());
  CHECK(r3.witness->gap_set == std::vector<Scalar>{q(1, 70), q(1, 35), q(3, 70), q(2, 35), q(1, 14),
                                                   q(3, 35), q(1, 10)});
  CHECK(verify_unbounded_construction(construct_unbounded_pl(10), ToleranceContext::exact()).observed == 21);
  CHECK(kind_of([] { construct_unbounded_pl(0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("property: ladder is contained for n in 1..50") {
  for (std::size_t n = 1; n <= 50; ++n) {
    CAPTURE(n);
    const auto c = construct_unbounded_pl(n);
    const auto r = verify_unbounded_construction(c, ToleranceContext::exact());
    CHECK(r.observed > n);
    CHECK(contains_ladder(*r.witness, c));
    CHECK(r.pass);
  }
}

TEST_CASE("find_first_zero") {
  const unsigned bits = 256;
  const Real tol = Real::parse("1e-60", bits);
  const RealFn g = [](const Real& x) { return cos(x); };
  const auto root = find_first_zero(g, Real(0L, bits), Real::pi(bits) * Real(2L, bits), 1024, tol);
  REQUIRE(root.has_value());
  CHECK(abs(*root - Real::pi(bits) / Real(2L, bits)) <= tol);

  const RealFn positive = [bits](const Real& x) { return cos(x) + Real(2L, bits); };
  CHECK_FALSE(find_first_zero(positive, Real(0L, bits), Real(6L, bits), 1024, tol).has_value());

  const RealFn s = [](const Real& x) { return sin(x); };
  const auto at_lo = find_first_zero(s, Real(0L, bits), Real(1L, bits), 16, tol);
  REQUIRE(at_lo.has_value());
  CHECK(at_lo->is_zero());
}

TEST_CASE("c2 construction for cosine") {
  const auto [w, r] = construct_c2_witness(cosine(), 2, actx());
  const auto ctx = ToleranceContext::approx(256, "1e-30");
  const Scalar half_pi = parse_scalar("pi/2", Mode::approx);
  CHECK(eq_tol(w.first_inflection, half_pi, ctx));
  CHECK(eq_tol(w.first_critical, 0L, ctx));
  CHECK(eq_tol(w.alpha, parse_scalar("pi/6", Mode::approx), ctx));
  CHECK(r.observed == 3);
  CHECK(r.lower_bound == std::size_t{2});
  CHECK(r.pass);

  CHECK(kind_of([] { construct_c2_witness(shifted_cosine(parse_scalar("pi/2", Mode::approx)), 2, actx()); }) ==
        ErrorKind::hypothesis_violation);

  AnalyticPeriodic flat = cosine();
  flat.d2f = [](const Real& x) { return abs(cos(x)) + Real(1L, x.bits()); };
  CHECK(kind_of([&] { construct_c2_witness(flat, 2, actx(), 256); }) == ErrorKind::search_failure);
}

TEST_CASE("property: cosine orbit is monotone with distinct differences for n up to 50") {
  for (std::size_t n = 1; n <= 50; ++n) {
    CAPTURE(n);
    const auto [w, r] = construct_c2_witness(cosine(), n, actx());
    CHECK(r.observed >= n);
    // oracle: cos(d*pi/(2(n+1))) for d = 1..n+1 is strictly decreasing
    // with pairwise distinct consecutive differences.
    using boost::multiprecision::cos;
    const oracle::Float step = oracle::pi() / (2 * (n + 1));
    std::vector<oracle::Float> diffs;
    for (std::size_t d = 1; d <= n; ++d) {
      const oracle::Float a = cos(step * d), b = cos(step * (d + 1));
      CHECK(a > b);
      diffs.push_back(a - b);
    }
    CHECK(oracle::distinct(diffs).size() == diffs.size());
  }
}
