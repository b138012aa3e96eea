#pragma once
// Recursive-descent parser for bivariate polynomial expressions over the
// rationals.  The grammar (whitespace is insignificant everywhere):
//
//   expr     := sign* term (('+' | '-') sign* term)*
//   term     := factor (('*' | juxtaposition) factor)*
//   factor   := base ('^' natural)*
//   base     := rational | 'x' | 'y' | '(' expr ')'
//   rational := natural ('/' natural)?
//
// Juxtaposition multiplies ("2x^2y" is 2·x²·y) and binds looser than '^'.
// Rational literals are written a/b; decimal literals are rejected with a
// dedicated message.  The only variables are x and y — any other letter
// raises UnknownVariable with its position.  Every polynomial printed by
// BiPoly::to_string parses back to the same polynomial.

#include <cctype>
#include <string>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/numbers.hpp"

namespace curvelog {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : s_(text) {}

  BiPoly run() {
    skip_ws();
    if (eof()) throw err("an expression");
    BiPoly p = expr();
    skip_ws();
    if (!eof()) throw err("'+', '-', '*', '^' or end of input");
    return p;
  }

 private:
  // The largest exponent the parser accepts; far above any germ of interest
  // but small enough to keep a typo from exhausting memory.
  static constexpr long kMaxExponent = 4096;

  const std::string& s_;
  std::size_t i_ = 0;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }

  Error err(const std::string& expected) const {
    std::string found = eof() ? std::string("end of input")
                              : "'" + std::string(1, s_[i_]) + "'";
    return Error(ErrorCode::SyntaxError,
                 "syntax error at position " + std::to_string(i_) + ": expected " + expected +
                     ", found " + found);
  }

  bool starts_base() const {
    if (eof()) return false;
    const char c = peek();
    // Letters other than x and y start a base so that "2z" reports the
    // unknown variable instead of a generic syntax error.
    return std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  // Folds any run of leading '+'/'-' signs into one parity bit.
  bool sign_run() {
    bool negative = false;
    skip_ws();
    while (!eof() && (peek() == '+' || peek() == '-')) {
      if (peek() == '-') negative = !negative;
      ++i_;
      skip_ws();
    }
    return negative;
  }

  BiPoly expr() {
    bool negative = sign_run();
    BiPoly acc = term();
    if (negative) acc = BiPoly(FieldElem(-1)) * acc;
    for (;;) {
      skip_ws();
      if (eof() || (peek() != '+' && peek() != '-')) break;
      bool subtract = peek() == '-';
      ++i_;
      if (sign_run()) subtract = !subtract;
      BiPoly next = term();
      acc = subtract ? acc - next : acc + next;
    }
    return acc;
  }

  BiPoly term() {
    BiPoly acc = factor();
    for (;;) {
      skip_ws();
      if (!eof() && peek() == '*') {
        ++i_;
        skip_ws();
        if (!starts_base()) throw err("a number, 'x', 'y' or '('");
        acc = acc * factor();
      } else if (starts_base()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  BiPoly factor() {
    BiPoly b = base();
    for (;;) {
      skip_ws();
      if (eof() || peek() != '^') break;
      ++i_;
      skip_ws();
      b = power(b, natural("a nonnegative integer exponent"));
    }
    return b;
  }

  static BiPoly power(const BiPoly& b, long n) {
    BiPoly acc(FieldElem(1));
    for (long i = 0; i < n; ++i) acc = acc * b;
    return acc;
  }

  long natural(const char* what) {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) throw err(what);
    const std::size_t start = i_;
    long value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > kMaxExponent) {
        i_ = start;
        throw Error(ErrorCode::SyntaxError,
                    "syntax error at position " + std::to_string(start) +
                        ": exponent exceeds the supported bound " + std::to_string(kMaxExponent));
      }
      ++i_;
    }
    return value;
  }

  std::string digit_run() {
    std::string digits;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits.push_back(peek());
      ++i_;
    }
    return digits;
  }

  BiPoly base() {
    skip_ws();
    if (eof()) throw err("a number, 'x', 'y' or '('");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (c == 'x') {
      ++i_;
      return BiPoly::x(1);
    }
    if (c == 'y') {
      ++i_;
      return BiPoly::y(1);
    }
    if (std::isalpha(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::UnknownVariable,
                  "unknown variable '" + std::string(1, c) + "' at position " +
                      std::to_string(i_) + " (only x and y are allowed)");
    if (c == '(') {
      ++i_;
      BiPoly inner = expr();
      skip_ws();
      if (eof() || peek() != ')') throw err("')'");
      ++i_;
      return inner;
    }
    throw err("a number, 'x', 'y' or '('");
  }

  BiPoly rational_literal() {
    const std::size_t start = i_;
    const std::string numerator = digit_run();
    if (!eof() && peek() == '.')
      throw Error(ErrorCode::SyntaxError,
                  "syntax error at position " + std::to_string(i_) +
                      ": decimal literals are not supported; write a rational as a/b");
    std::string denominator;
    if (!eof() && peek() == '/') {
      const std::size_t slash = i_;
      ++i_;
      denominator = digit_run();
      if (denominator.empty())
        throw Error(ErrorCode::SyntaxError, "syntax error at position " + std::to_string(slash + 1) +
                                                ": expected a digit after '/'");
    }
    Rational value;
    if (denominator.empty()) {
      value = Rational(mpz_class(numerator));
    } else {
      const mpz_class den(denominator);
      if (den == 0)
        throw Error(ErrorCode::SyntaxError, "syntax error at position " + std::to_string(start) +
                                                ": zero denominator in rational literal");
      value = Rational(mpz_class(numerator), den);
      value.canonicalize();
    }
    return BiPoly(FieldElem(value));
  }
};

}  // namespace detail

// Parses a polynomial expression in x and y with rational coefficients.
// Throws Error(SyntaxError) with the offending position, or
// Error(UnknownVariable) for a variable other than x and y.
inline BiPoly parse_poly(const std::string& text) { return detail::PolyParser(text).run(); }

}  // namespace curvelog
