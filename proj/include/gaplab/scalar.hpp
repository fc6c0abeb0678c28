#pragma once

// Two-level number tower: exact rationals (GMP) and fixed-precision
// binary reals (MPFR). Mixed arithmetic promotes to the real side.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaplab {

using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMinPrecisionBits = 64;

/// RAII wrapper over an mpfr_t with its own precision. Binary operations
/// round to the larger of the operand precisions.
class Real {
 public:
  explicit Real(unsigned bits = kDefaultPrecisionBits);
  Real(long value, unsigned bits);
  Real(const Rational& value, unsigned bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal (or "inf"-free scientific) literal at `bits`.
  static Real parse(std::string_view text, unsigned bits);
  static Real pi(unsigned bits);
  static Real e(unsigned bits);
  static Real sqrt2(unsigned bits);
  static Real phi(unsigned bits);

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Shortest decimal string that round-trips at this precision.
  std::string to_string() const;
  /// Decimal string with `digits` significant digits.
  std::string to_string(int digits) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    return mpfr_cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real floor(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sqrt(const Real& x);
/// Exact comparison of a real against a rational.
int compare(const Real& a, const Rational& b);

enum class Mode { exact, approx };

std::string_view to_string(Mode mode);

/// A number that is either an exact rational or an approximate real.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(long value) : value_(Rational(value)) {}  // NOLINT(implicit)
  Scalar(Rational value);                          // NOLINT(implicit)
  Scalar(Real value) : value_(std::move(value)) {} // NOLINT(implicit)

  static Scalar ratio(long num, long den);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  Mode mode() const { return is_exact() ? Mode::exact : Mode::approx; }

  const Rational& rational() const { return std::get<Rational>(value_); }
  const Real& real() const { return std::get<Real>(value_); }

  /// Converts to a real at `bits`. Approx scalars keep their own value
  /// rounded to `bits`.
  Real to_real(unsigned bits) const;
  double to_double() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  /// "p/q" for exact scalars, round-trip decimal for approx ones.
  std::string to_string() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  // Value comparisons are exact across modes (no tolerance).
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, Real> value_;
};

Scalar abs(const Scalar& x);
Scalar floor(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

/// Fractional part x - floor(x), in [0, 1).
Scalar frac(const Scalar& x);

/// x reduced into [0, period). Throws invalid_argument when period <= 0.
Scalar reduce_mod_period(const Scalar& x, const Scalar& period);

/// Equality tolerance plus working precision. Exact computations ignore the
/// tolerance entirely.
class ToleranceContext {
 public:
  /// Context for all-exact computation: tolerance 0.
  static ToleranceContext exact();
  static ToleranceContext approx(unsigned bits = kDefaultPrecisionBits);
  static ToleranceContext approx(unsigned bits, const Real& tolerance);
  static ToleranceContext approx(unsigned bits, std::string_view tolerance);

  const Real& tolerance() const { return tolerance_; }
  unsigned precision_bits() const { return bits_; }
  Mode mode() const { return mode_; }

 private:
  ToleranceContext(Mode mode, unsigned bits, Real tolerance);

  Mode mode_;
  unsigned bits_;
  Real tolerance_;
};

inline constexpr std::string_view kDefaultTolerance = "1e-30";

/// Exact equality when both sides are exact, |a - b| <= tolerance otherwise.
bool eq_tol(const Scalar& a, const Scalar& b, const ToleranceContext& ctx);

/// Collapses an ascending list into cluster representatives (the first
/// member of each cluster). A value joins the current cluster when it is
/// eq_tol to the cluster representative.
std::vector<Scalar> cluster_distinct(std::span<const Scalar> sorted,
                                     const ToleranceContext& ctx);

}  // namespace gaplab
