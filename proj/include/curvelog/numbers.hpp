#pragma once
// Exact rational arithmetic, GMP-backed.
//
// Rational is mpq_class (always canonical: lowest terms, positive
// denominator).  The helpers below add the pieces GMP's C++ wrapper lacks:
// string round-trips in the "p/q" grammar, integer powers with negative
// exponents, exact n-th roots, and a total order usable for deterministic
// tie-breaking.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "curvelog/errors.hpp"

namespace curvelog {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rational_of(long n, long d = 1) {
  if (d == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Prints "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign_of(const Rational& q) { return sgn(q); }

// b^e for any integer e; b must be nonzero when e < 0.
inline Rational pow_rational(const Rational& b, long e) {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul
                        : static_cast<unsigned long>(e);
  Rational p;
  mpz_pow_ui(p.get_num_mpz_t(), b.get_num_mpz_t(), n);
  mpz_pow_ui(p.get_den_mpz_t(), b.get_den_mpz_t(), n);
  p.canonicalize();
  if (!inv) return p;
  if (p == 0) throw Error(ErrorCode::DivisionByZero, "0 raised to a negative power");
  return Rational(1) / p;
}

// Exact d-th root in ℚ, if one exists (d ≥ 1).  For even d the input must be
// ≥ 0 and the nonnegative root is returned; for odd d negative inputs give
// the negative root.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long d) {
  if (d == 0) return std::nullopt;
  if (d == 1) return q;
  if (q == 0) return Rational(0);
  bool neg = q < 0;
  if (neg && d % 2 == 0) return std::nullopt;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), d)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d)) return std::nullopt;
  Rational r(neg ? Integer(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

// Total order for deterministic sorting (numeric order).
inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

// Narrowing with a loud failure; exponents and small counters only.
inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::Internal, "integer too large for long");
  return z.get_si();
}

}  // namespace curvelog
