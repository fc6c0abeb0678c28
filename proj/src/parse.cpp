#include "gaplab/parse.hpp"

#include <cctype>
#include <string>

#include "gaplab/error.hpp"

namespace gaplab {
namespace {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | '+' unary | atom
// atom   := number | constant | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view text, Mode mode, unsigned bits)
      : text_(text), mode_(mode), bits_(bits) {}

  Scalar run() {
    Scalar value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::parse_error,
                "cannot parse '" + std::string(text_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar value = term();
    for (;;) {
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  Scalar term() {
    Scalar value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        Scalar rhs = unary();
        if (rhs.is_zero()) fail("division by zero");
        value /= rhs;
      } else {
        return value;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }

  Scalar atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Scalar value = expr();
      if (!accept(')')) fail("missing ')'");
      return value;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return constant();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Scalar number() {
    std::string digits;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_point) ++fraction_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) fail("malformed number");
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      // Only an exponent if digits follow; otherwise 'e' is left for the caller.
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        const std::size_t start = pos_ + 1;
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string exp_text(text_.substr(start, pos_ - start));
        if (exp_text.size() > 6) fail("exponent out of range");
        exponent = std::stol(exp_text);
      }
    }
    exponent -= static_cast<long>(fraction_digits);
    Rational value{mpz_class(digits, 10)};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) value /= scale;
    else value *= scale;
    value.canonicalize();
    return Scalar(value);
  }

  Scalar constant() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (mode_ == Mode::exact) fail("constant '" + std::string(name) + "' is not rational");
    if (name == "pi") return Scalar(Real::pi(bits_));
    if (name == "e") return Scalar(Real::e(bits_));
    if (name == "sqrt2") return Scalar(Real::sqrt2(bits_));
    if (name == "phi") return Scalar(Real::phi(bits_));
    fail("unknown constant '" + std::string(name) + "'");
  }

  std::string_view text_;
  Mode mode_;
  unsigned bits_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, Mode mode, unsigned bits) {
  Scalar value = ExprParser(text, mode, bits).run();
  if (mode == Mode::approx && value.is_exact()) return Scalar(value.to_real(bits));
  return value;
}

}  // namespace gaplab
