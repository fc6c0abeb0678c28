#include "gaplab/periodic_fn.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "gaplab/error.hpp"
#include "gaplab/parse.hpp"

namespace gaplab {

// ------------------------------------------------------ PiecewiseLinear

PiecewiseLinear PiecewiseLinear::validate(std::vector<Piece> pieces, Scalar period) {
  if (period.sign() <= 0) {
    throw Error(ErrorKind::invalid_argument, "period must be positive, got " + period.to_string());
  }
  if (pieces.empty()) throw Error(ErrorKind::invalid_argument, "no pieces given");

  if (!pieces.front().left.is_zero()) {
    throw Error(ErrorKind::invalid_partition, "first piece must start at 0");
  }
  if (pieces.back().right != period) {
    throw Error(ErrorKind::invalid_partition, "last piece must end at the period");
  }
  if (pieces.back().right_closed) {
    throw Error(ErrorKind::invalid_partition, "the period belongs to the next copy of [0, P)");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!(p.left < p.right)) {
      throw Error(ErrorKind::invalid_partition,
                  "piece " + std::to_string(i) + " is empty or reversed");
    }
    if (i + 1 == pieces.size()) break;
    const Piece& next = pieces[i + 1];
    if (p.right != next.left) {
      throw Error(ErrorKind::invalid_partition,
                  "pieces " + std::to_string(i) + " and " + std::to_string(i + 1) +
                      " leave a gap or overlap at " + p.right.to_string());
    }
    if (p.slope == next.slope && p.intercept == next.intercept) {
      throw Error(ErrorKind::not_maximal,
                  "pieces " + std::to_string(i) + " and " + std::to_string(i + 1) +
                      " are collinear");
    }
  }
  return PiecewiseLinear(std::move(pieces), std::move(period));
}

std::size_t PiecewiseLinear::locate(const Scalar& reduced) const {
  const auto it = std::partition_point(pieces_.begin(), pieces_.end(), [&](const Piece& p) {
    return !(reduced < p.right || (reduced == p.right && p.right_closed));
  });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

Scalar PiecewiseLinear::eval(const Scalar& x) const {
  const Scalar reduced = reduce_mod_period(x, period_);
  return pieces_[locate(reduced)].value_at(reduced);
}

Scalar PiecewiseLinear::snap(const Scalar& reduced, const ToleranceContext& ctx) const {
  if (reduced.is_exact()) return reduced;
  if (eq_tol(reduced, period_, ctx)) return Scalar(0L);
  for (const Piece& p : pieces_) {
    if (eq_tol(reduced, p.left, ctx)) return p.left;
  }
  return reduced;
}

SlopeStats PiecewiseLinear::slope_stats() const {
  std::vector<Scalar> magnitudes;
  for (const Piece& p : pieces_) magnitudes.push_back(abs(p.slope));
  std::sort(magnitudes.begin(), magnitudes.end());
  const auto last = std::unique(magnitudes.begin(), magnitudes.end());
  return {pieces_.size(), static_cast<std::size_t>(last - magnitudes.begin())};
}

FunctionExtrema PiecewiseLinear::extrema() const {
  // Closure of each piece's image, so unattained limits count.
  Scalar lo = pieces_.front().value_at(pieces_.front().left);
  Scalar hi = lo;
  for (const Piece& p : pieces_) {
    for (const Scalar& v : {p.value_at(p.left), p.value_at(p.right)}) {
      lo = min(lo, v);
      hi = max(hi, v);
    }
  }
  return {lo, hi};
}

namespace {

struct ValueRange {
  Scalar lo;
  bool lo_closed;
  Scalar hi;
  bool hi_closed;
};

ValueRange image_of(const PiecewiseLinear& f, std::size_t i) {
  const Piece& p = f.pieces()[i];
  ValueRange r{p.value_at(p.left), f.left_closed(i), p.value_at(p.right), p.right_closed};
  if (p.slope.sign() < 0) {
    std::swap(r.lo, r.hi);
    std::swap(r.lo_closed, r.hi_closed);
  }
  return r;
}

// True when every value of `a` lies strictly below every value of `b`.
bool strictly_below(const ValueRange& a, const ValueRange& b) {
  if (a.hi < b.lo) return true;
  return a.hi == b.lo && !(a.hi_closed && b.lo_closed);
}

}  // namespace

bool PiecewiseLinear::injective_on_fd() const {
  std::vector<ValueRange> ranges;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].slope.is_zero()) return false;
    ranges.push_back(image_of(*this, i));
  }
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    for (std::size_t j = i + 1; j < ranges.size(); ++j) {
      if (!strictly_below(ranges[i], ranges[j]) && !strictly_below(ranges[j], ranges[i])) {
        return false;
      }
    }
  }
  return true;
}

bool PiecewiseLinear::monotone_on_fd() const {
  const int direction = pieces_.front().slope.sign();
  if (direction == 0) return false;
  for (const Piece& p : pieces_) {
    if (p.slope.sign() != direction) return false;
  }
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const ValueRange a = image_of(*this, i);
    const ValueRange b = image_of(*this, i + 1);
    if (direction > 0 ? !strictly_below(a, b) : !strictly_below(b, a)) return false;
  }
  return true;
}

PiecewiseLinear PiecewiseLinear::affine_image(const Scalar& c1, const Scalar& c2) const {
  if (c1.is_zero()) throw Error(ErrorKind::invalid_argument, "affine scale must be nonzero");
  std::vector<Piece> pieces = pieces_;
  for (Piece& p : pieces) {
    p.slope = p.slope * c1;
    p.intercept = p.intercept * c1 + c2;
  }
  return validate(std::move(pieces), period_);
}

// ----------------------------------------------------- AnalyticPeriodic

Scalar AnalyticPeriodic::eval(const Scalar& x) const {
  return Scalar(f(reduce_mod_period(x, period).to_real(bits)));
}

AnalyticPeriodic AnalyticPeriodic::affine_image(const Scalar& c1, const Scalar& c2) const {
  if (c1.is_zero()) throw Error(ErrorKind::invalid_argument, "affine scale must be nonzero");
  const Real scale = c1.to_real(bits);
  const Real shift = c2.to_real(bits);
  AnalyticPeriodic out = *this;
  out.name = name + "*(" + c1.to_string() + ")+(" + c2.to_string() + ")";
  out.f = [g = f, scale, shift](const Real& x) { return g(x) * scale + shift; };
  out.df = [g = df, scale](const Real& x) { return g(x) * scale; };
  out.d2f = [g = d2f, scale](const Real& x) { return g(x) * scale; };
  Scalar lo = extrema.inf_value * c1 + c2;
  Scalar hi = extrema.sup_value * c1 + c2;
  if (c1.sign() < 0) std::swap(lo, hi);
  out.extrema = {lo, hi};
  return out;
}

void validate_analytic(const AnalyticPeriodic& fn, std::size_t samples, unsigned long seed) {
  if (fn.period.sign() <= 0) throw Error(ErrorKind::invalid_argument, "period must be positive");
  if (!fn.f || !fn.df || !fn.d2f) {
    throw Error(ErrorKind::invalid_argument, fn.name + ": missing evaluator");
  }
  const unsigned bits = fn.bits;
  const Real period = fn.period.to_real(bits);
  const auto pow2 = [bits](long e) {
    Real out(1L, bits);
    mpfr_mul_2si(out.get(), out.get(), e, MPFR_RNDN);
    return out;
  };
  // Step sizes balance truncation (h^2) against rounding (eps / h^k).
  const Real h1 = pow2(-static_cast<long>(bits / 3));
  const Real h2 = pow2(-static_cast<long>(bits / 4));
  const Real slack = pow2(10);
  const Real tol_periodic = pow2(-static_cast<long>(bits / 2));
  const Real tol_d1 = slack * h1 * h1;
  const Real tol_d2 = slack * h2 * h2;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const Real x = period * Real(Rational(unit(rng)), bits);
    const Real fx = fn.f(x);
    const Real scale = Real(1L, bits) + abs(fx);
    if (abs(fn.f(x + period) - fx) > tol_periodic * scale) {
      throw Error(ErrorKind::invalid_argument, fn.name + ": f(x + P) != f(x)");
    }
    const Real d1 = (fn.f(x + h1) - fn.f(x - h1)) / (Real(2L, bits) * h1);
    if (abs(d1 - fn.df(x)) > tol_d1 * scale) {
      throw Error(ErrorKind::invalid_argument, fn.name + ": f' disagrees with finite differences");
    }
    const Real d2 = (fn.f(x + h2) - Real(2L, bits) * fx + fn.f(x - h2)) / (h2 * h2);
    if (abs(d2 - fn.d2f(x)) > tol_d2 * scale) {
      throw Error(ErrorKind::invalid_argument, fn.name + ": f'' disagrees with finite differences");
    }
  }
}

// ------------------------------------------------------------- variant

Scalar eval(const PeriodicFunction& fn, const Scalar& x) {
  return std::visit([&](const auto& f) { return f.eval(x); }, fn);
}

const Scalar& period(const PeriodicFunction& fn) {
  if (const auto* pl = std::get_if<PiecewiseLinear>(&fn)) return pl->period();
  return std::get<AnalyticPeriodic>(fn).period;
}

FunctionExtrema extrema(const PeriodicFunction& fn) {
  if (const auto* pl = std::get_if<PiecewiseLinear>(&fn)) return pl->extrema();
  return std::get<AnalyticPeriodic>(fn).extrema;
}

PeriodicFunction affine_image(const PeriodicFunction& fn, const Scalar& c1, const Scalar& c2) {
  return std::visit([&](const auto& f) -> PeriodicFunction { return f.affine_image(c1, c2); },
                    fn);
}

// ------------------------------------------------------------ builtins

PiecewiseLinear sawtooth() {
  return PiecewiseLinear::validate({Piece{0L, 1L, false, 1L, 0L}}, 1L);
}

PiecewiseLinear triangle_wave() {
  const Scalar half = Scalar::ratio(1, 2);
  return PiecewiseLinear::validate(
      {Piece{0L, half, false, 1L, 0L}, Piece{half, 1L, false, -1L, 1L}}, 1L);
}

AnalyticPeriodic cosine(unsigned bits) {
  AnalyticPeriodic fn;
  fn.name = "cosine";
  fn.bits = bits;
  fn.period = Scalar(Real(2L, bits) * Real::pi(bits));
  fn.f = [](const Real& x) { return cos(x); };
  fn.df = [](const Real& x) { return -sin(x); };
  fn.d2f = [](const Real& x) { return -cos(x); };
  fn.extrema = {Scalar(-1L), Scalar(1L)};
  return fn;
}

AnalyticPeriodic shifted_cosine(const Scalar& shift, unsigned bits) {
  AnalyticPeriodic fn = cosine(bits);
  const Real r = shift.to_real(bits);
  fn.name = "shifted_cosine(" + shift.to_string() + ")";
  fn.f = [r](const Real& x) { return cos(x - r); };
  fn.df = [r](const Real& x) { return -sin(x - r); };
  fn.d2f = [r](const Real& x) { return -cos(x - r); };
  return fn;
}

PeriodicFunction builtin(std::string_view name, unsigned bits) {
  if (name == "sawtooth") return sawtooth();
  if (name == "triangle") return triangle_wave();
  if (name == "cosine") return cosine(bits);
  constexpr std::string_view prefix = "shifted_cosine(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const auto arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    return shifted_cosine(parse_scalar(arg, Mode::approx, bits), bits);
  }
  throw Error(ErrorKind::invalid_argument, "unknown builtin function '" + std::string(name) + "'");
}

}  // namespace gaplab
