#pragma once
// Validation and normalization of an input curve germ against the boundary
// divisor D = V(y) at the origin.
//
// normalize() checks the germ passes through the origin, does not contain the
// boundary as a component, and is reduced at the origin, then splits it as
//     F = y·f(x, y) + x^w·u(x),  u(0) ≠ 0,
// where w is the contact order of the curve with the boundary.
//
// intersection_multiplicity() is the local colength of ⟨F, G⟩ at the origin,
// computed by capping with ⟨x^N, y^N⟩ and growing N until the count is
// certified stable (the cap kills every zero of the pair away from the
// origin, and once the count drops below N, Nakayama pins it exactly).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/groebner.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {

struct CurveGerm {
  BiPoly F;    // the defining polynomial
  int w = 0;   // contact order with the boundary at the origin
  BiPoly f;    // cofactor of y in the decomposition
  UniPoly u;   // unit-in-x factor: F(x, 0) = x^w·u(x), u(0) ≠ 0
};

namespace detail {

// Bivariate polynomials viewed in y with coefficients in K[x]; index = power
// of y.  Used only for gcd computations.
using YPoly = std::vector<UniPoly>;

inline void ytrim(YPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline YPoly to_ypoly(const BiPoly& p) {
  YPoly out;
  for (int j = 0; j <= (p.is_zero() ? -1 : p.y_degree()); ++j) out.push_back(p.y_slice(j));
  ytrim(out);
  return out;
}

inline BiPoly from_ypoly(const YPoly& p) {
  BiPoly out;
  for (std::size_t j = 0; j < p.size(); ++j)
    for (int i = 0; i <= (p[j].is_zero() ? -1 : p[j].deg()); ++i)
      out.add_term({i, static_cast<int>(j)}, p[j].coeff(i));
  return out;
}

inline UniPoly ycontent(const YPoly& p) {
  UniPoly c("x");
  for (const UniPoly& q : p) {
    if (q.is_zero()) continue;
    c = c.is_zero() ? q.monic() : gcd_monic(c, q);
  }
  return c;
}

inline YPoly yprimitive(const YPoly& p, const UniPoly& content) {
  YPoly out;
  out.reserve(p.size());
  for (const UniPoly& q : p)
    out.push_back(q.is_zero() ? q : q.exact_div(content));
  return out;
}

inline YPoly yscale(const YPoly& p, const UniPoly& s) {
  YPoly out;
  out.reserve(p.size());
  for (const UniPoly& q : p) out.push_back(q * s);
  return out;
}

inline YPoly ysub(const YPoly& a, const YPoly& b) {
  YPoly out = a;
  if (out.size() < b.size()) out.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = out[j] - b[j];
  ytrim(out);
  return out;
}

// Pseudo-remainder of a by b in the variable y (deg a ≥ deg b ≥ 0 in y).
inline YPoly yprem(YPoly a, const YPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    int da = static_cast<int>(a.size()) - 1;
    UniPoly q = a.back();
    YPoly shifted(static_cast<std::size_t>(da - db), UniPoly("x"));
    for (const UniPoly& c : b) shifted.push_back(c * q);
    a = ysub(yscale(a, b.back()), shifted);
    if (static_cast<int>(a.size()) - 1 == da)
      throw Error(ErrorCode::Internal, "pseudo-division failed to lower the degree");
    if (a.empty()) break;
  }
  return a;
}

// gcd in K[x, y], returned with primitive content and monic leading
// y-coefficient normalization (unique up to that normalization).
inline BiPoly bivariate_gcd(const BiPoly& A, const BiPoly& B) {
  YPoly a = to_ypoly(A), b = to_ypoly(B);
  if (a.empty()) return from_ypoly(b);
  if (b.empty()) return from_ypoly(a);
  UniPoly ca = ycontent(a), cb = ycontent(b);
  UniPoly cg = gcd_monic(ca, cb);
  a = yprimitive(a, ca);
  b = yprimitive(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    YPoly r = yprem(a, b);
    a = std::move(b);
    if (r.empty()) {
      b = std::move(r);
    } else {
      b = yprimitive(r, ycontent(r));
    }
    if (a.size() < b.size()) std::swap(a, b);
  }
  YPoly g;
  if (!b.empty()) {
    // a common y-degree-0 primitive factor must divide both contents already
    g = YPoly{UniPoly::monomial("x", 0)};
  } else {
    g = yprimitive(a, ycontent(a));
  }
  // multiply back the content gcd and normalize the leading y-coefficient
  YPoly out = yscale(g, cg);
  UniPoly lead = out.back();
  FieldElem lc = lead.lc();
  YPoly normalized;
  for (const UniPoly& q : out) normalized.push_back(lc.inverse() * q);
  return from_ypoly(normalized);
}

}  // namespace detail

// Constant term of p at the origin.
inline FieldElem value_at_origin(const BiPoly& p) { return p.coeff(0, 0); }

inline CurveGerm normalize(const BiPoly& F) {
  if (F.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial is not a curve germ");
  if (!value_at_origin(F).test_zero())
    throw Error(ErrorCode::NotThroughOrigin, "the germ must vanish at the origin");
  // reducedness at the origin: gcd(F, ∂x F, ∂y F) must not vanish there.
  // Checked before the divisor test so a germ that fails both (e.g. x·y²)
  // is reported as non-reduced.
  BiPoly g = detail::bivariate_gcd(detail::bivariate_gcd(F, F.partial('x')), F.partial('y'));
  if (value_at_origin(g).test_zero())
    throw Error(ErrorCode::NonReduced, "the germ has a repeated component through the origin");
  UniPoly trace = F.at_y0("x");  // F(x, 0)
  if (trace.is_zero())
    throw Error(ErrorCode::DivisorComponent, "the boundary divisor divides the germ");

  CurveGerm germ;
  germ.F = F;
  germ.w = trace.order();
  germ.u = trace.divided_by_power(germ.w);
  germ.f = (F - BiPoly::from_x_poly(trace)).divided_by_y(1);
  return germ;
}

// Local intersection multiplicity of F and G at the origin; nullopt when the
// two share a component through the origin.
inline std::optional<long> intersection_multiplicity(const BiPoly& F, const BiPoly& G) {
  if (F.is_zero() || G.is_zero()) return std::nullopt;
  if (!value_at_origin(F).test_zero() || !value_at_origin(G).test_zero()) return 0;
  BiPoly g = detail::bivariate_gcd(F, G);
  if (value_at_origin(g).test_zero()) return std::nullopt;
  for (int n = 2;; n *= 2) {
    auto c = colength(buchberger({F, G, BiPoly::x(n), BiPoly::y(n)}, MonomialOrder::lex_yx()));
    if (!c) throw Error(ErrorCode::Internal, "capped colength must be finite");
    if (*c < n) return *c;
  }
}

}  // namespace curvelog
