#include "gaplab/scalar.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "gaplab/error.hpp"

namespace gaplab {

// ---------------------------------------------------------------- Real

Real::Real(unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Leave `other` as a valid minimal-precision zero so its destructor is safe.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, unsigned bits) {
  Real out(bits);
  const std::string s(text);
  if (s.empty() || mpfr_set_str(out.value_, s.c_str(), 10, MPFR_RNDN) != 0 ||
      !mpfr_number_p(out.value_)) {
    throw Error(ErrorKind::parse_error, "not a decimal number: '" + s + "'");
  }
  return out;
}

Real Real::pi(unsigned bits) {
  Real out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

Real Real::e(unsigned bits) {
  Real out(1L, bits);
  mpfr_exp(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real Real::sqrt2(unsigned bits) {
  Real out(bits);
  mpfr_sqrt_ui(out.value_, 2, MPFR_RNDN);
  return out;
}

Real Real::phi(unsigned bits) {
  // (1 + sqrt 5) / 2
  Real out(bits);
  mpfr_sqrt_ui(out.value_, 5, MPFR_RNDN);
  mpfr_add_ui(out.value_, out.value_, 1, MPFR_RNDN);
  mpfr_div_2ui(out.value_, out.value_, 1, MPFR_RNDN);
  return out;
}

namespace {

std::string format_decimal(mpfr_srcptr x, std::size_t digits) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, decltype(&mpfr_free_str)> raw(
      mpfr_get_str(nullptr, &exp, 10, digits, x, MPFR_RNDN), &mpfr_free_str);
  std::string mantissa(raw.get());
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  // mpfr reports 0.DDDD x 10^exp; emit D.DDD e(exp-1).
  const long e10 = static_cast<long>(exp) - 1;
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

}  // namespace

std::string Real::to_string() const { return format_decimal(value_, 0); }

std::string Real::to_string(int digits) const {
  return format_decimal(value_, static_cast<std::size_t>(std::max(digits, 1)));
}

namespace {

mpfr_prec_t joint_prec(mpfr_srcptr a, mpfr_srcptr b) {
  return std::max(mpfr_get_prec(a), mpfr_get_prec(b));
}

}  // namespace

Real& Real::operator+=(const Real& rhs) {
  const auto prec = joint_prec(value_, rhs.value_);
  if (prec > mpfr_get_prec(value_)) mpfr_prec_round(value_, prec, MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  const auto prec = joint_prec(value_, rhs.value_);
  if (prec > mpfr_get_prec(value_)) mpfr_prec_round(value_, prec, MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  const auto prec = joint_prec(value_, rhs.value_);
  if (prec > mpfr_get_prec(value_)) mpfr_prec_round(value_, prec, MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::invalid_argument, "division by zero");
  const auto prec = joint_prec(value_, rhs.value_);
  if (prec > mpfr_get_prec(value_)) mpfr_prec_round(value_, prec, MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real floor(const Real& x) {
  Real out(x.bits());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real sin(const Real& x) {
  Real out(x.bits());
  mpfr_sin(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real cos(const Real& x) {
  Real out(x.bits());
  mpfr_cos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw Error(ErrorKind::invalid_argument, "sqrt of negative");
  Real out(x.bits());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

int compare(const Real& a, const Rational& b) {
  return mpfr_cmp_q(a.get(), b.get_mpq_t());
}

// -------------------------------------------------------------- Scalar

std::string_view to_string(Mode mode) {
  return mode == Mode::exact ? "exact" : "approx";
}

Scalar::Scalar(Rational value) : value_(std::move(value)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw Error(ErrorKind::invalid_argument, "zero denominator");
  return Scalar(Rational(num, den));
}

Real Scalar::to_real(unsigned bits) const {
  if (is_exact()) return Real(rational(), bits);
  Real out(bits);
  mpfr_set(out.get(), real().get(), MPFR_RNDN);
  return out;
}

double Scalar::to_double() const {
  return is_exact() ? rational().get_d() : real().to_double();
}

int Scalar::sign() const { return is_exact() ? sgn(rational()) : real().sign(); }

bool Scalar::is_integer() const {
  if (is_exact()) return rational().get_den() == 1;
  return mpfr_integer_p(real().get()) != 0;
}

std::string Scalar::to_string() const {
  if (is_exact()) return rational().get_str();
  return real().to_string();
}

namespace {

// Precision used when an exact operand meets an approx one.
unsigned promote_bits(const Scalar& a, const Scalar& b) {
  unsigned bits = 0;
  if (!a.is_exact()) bits = std::max(bits, a.real().bits());
  if (!b.is_exact()) bits = std::max(bits, b.real().bits());
  return bits;
}

template <typename ExactOp, typename RealOp>
Scalar combine(const Scalar& a, const Scalar& b, ExactOp exact_op, RealOp real_op) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(exact_op(a.rational(), b.rational())));
  const unsigned bits = promote_bits(a, b);
  return Scalar(real_op(a.to_real(bits), b.to_real(bits)));
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const Rational& x, const Rational& y) { return Rational(x + y); },
                  [](const Real& x, const Real& y) { return x + y; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const Rational& x, const Rational& y) { return Rational(x - y); },
                  [](const Real& x, const Real& y) { return x - y; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const Rational& x, const Rational& y) { return Rational(x * y); },
                  [](const Real& x, const Real& y) { return x * y; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::invalid_argument, "division by zero");
  *this = combine(*this, rhs, [](const Rational& x, const Rational& y) { return Rational(x / y); },
                  [](const Real& x, const Real& y) { return x / y; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(-real());
}

namespace {

int compare_scalars(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return cmp(a.rational(), b.rational());
  if (a.is_exact()) return -compare(b.real(), a.rational());
  if (b.is_exact()) return compare(a.real(), b.rational());
  return mpfr_cmp(a.real().get(), b.real().get());
}

}  // namespace

bool operator==(const Scalar& a, const Scalar& b) { return compare_scalars(a, b) == 0; }

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  return compare_scalars(a, b) <=> 0;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar floor(const Scalar& x) {
  if (x.is_exact()) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.rational().get_num_mpz_t(), x.rational().get_den_mpz_t());
    return Scalar(Rational(q));
  }
  return Scalar(floor(x.real()));
}

Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar frac(const Scalar& x) {
  Scalar out = x - floor(x);
  // A tiny negative approx x rounds x - floor(x) up to exactly 1; on the
  // circle that point is 0.
  if (!out.is_exact() && out >= Scalar(1)) return Scalar(Real(x.real().bits()));
  return out;
}

Scalar reduce_mod_period(const Scalar& x, const Scalar& period) {
  if (period.sign() <= 0) {
    throw Error(ErrorKind::invalid_argument, "period must be positive, got " + period.to_string());
  }
  Scalar out = x - period * floor(x / period);
  if (!out.is_exact()) {
    if (out.sign() < 0) out += period;
    if (out >= period) out = Scalar(Real(out.real().bits()));
  }
  return out;
}

// ---------------------------------------------------- ToleranceContext

ToleranceContext::ToleranceContext(Mode mode, unsigned bits, Real tolerance)
    : mode_(mode), bits_(bits), tolerance_(std::move(tolerance)) {}

ToleranceContext ToleranceContext::exact() {
  return ToleranceContext(Mode::exact, kDefaultPrecisionBits, Real(kDefaultPrecisionBits));
}

ToleranceContext ToleranceContext::approx(unsigned bits) {
  return approx(bits, kDefaultTolerance);
}

ToleranceContext ToleranceContext::approx(unsigned bits, const Real& tolerance) {
  if (bits < kMinPrecisionBits) {
    throw Error(ErrorKind::invalid_argument,
                "precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
  }
  if (tolerance.sign() < 0) {
    throw Error(ErrorKind::invalid_argument, "tolerance must be nonnegative");
  }
  Real tol(bits);
  mpfr_set(tol.get(), tolerance.get(), MPFR_RNDN);
  return ToleranceContext(Mode::approx, bits, std::move(tol));
}

ToleranceContext ToleranceContext::approx(unsigned bits, std::string_view tolerance) {
  return approx(bits, Real::parse(tolerance, std::max(bits, kMinPrecisionBits)));
}

bool eq_tol(const Scalar& a, const Scalar& b, const ToleranceContext& ctx) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const Scalar diff = abs(a - b);
  return diff <= Scalar(ctx.tolerance());
}

std::vector<Scalar> cluster_distinct(std::span<const Scalar> sorted,
                                     const ToleranceContext& ctx) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] < sorted[i - 1]) {
      throw Error(ErrorKind::invalid_argument, "cluster_distinct: input not sorted ascending");
    }
  }
  std::vector<Scalar> reps;
  for (const Scalar& v : sorted) {
    if (reps.empty() || !eq_tol(reps.back(), v, ctx)) reps.push_back(v);
  }
  return reps;
}

}  // namespace gaplab
