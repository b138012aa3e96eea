#pragma once
// Truncated power series, univariate (TSeries) and bivariate (BiSeries),
// with pessimistic truncation-order bookkeeping.
//
// A series is a polynomial plus a guarantee: all terms of (total) degree
// < prec are exactly right; nothing is claimed beyond.  prec = kExactSeries
// marks an exact polynomial.  Products propagate the guarantee by
//     prec(A·B) = min(prec(A) + ord(B), prec(B) + ord(A)),
// where ord is the representation order (a sound lower bound for the true
// order on every branch of a reducible tower).  Orders used for decisions
// (certified_order) go through the splitting zero test instead.
//
// unit_inverse, unit_root and scaling_solve are the order-by-order solvers
// the downstream normal-form and branch computations rely on.

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/qfactor.hpp"
#include "curvelog/tower.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {

inline constexpr long kExactSeries = std::numeric_limits<long>::max();

namespace detail {
inline long add_prec(long a, long b) {  // saturating at exact
  if (a == kExactSeries || b == kExactSeries) return kExactSeries;
  return a + b;
}
// The finest tower appearing among the coefficients (for root searches).
inline TowerPtr finest_tower(const VPoly& coeffs) {
  TowerPtr best = nullptr;
  for (const auto& c : coeffs)
    if (c.tower() && (!best || detail::tower_contains(c.tower(), best))) best = c.tower();
  return best;
}
}  // namespace detail

// --- univariate series -------------------------------------------------------

class TSeries {
 public:
  TSeries() : p_("t"), prec_(kExactSeries) {}
  explicit TSeries(std::string var) : p_(std::move(var)), prec_(kExactSeries) {}
  // Truncates stored terms to degree < prec.
  TSeries(UniPoly p, long prec) : p_(std::move(p)), prec_(prec) { chop(); }
  static TSeries exact(UniPoly p) { return TSeries(std::move(p), kExactSeries); }

  const UniPoly& poly() const { return p_; }
  const std::string& var() const { return p_.var(); }
  long prec() const { return prec_; }
  bool is_exact() const { return prec_ == kExactSeries; }
  bool known_zero() const { return is_exact() && p_.is_zero(); }
  FieldElem coeff(int k) const { return p_.coeff(k); }

  // Representation order: degree of the lowest stored term, or prec when
  // nothing is stored (kExactSeries for the exact zero).
  long repr_order() const { return p_.is_zero() ? prec_ : p_.order(); }

  // Mathematical order, when certified by a coefficient that is nonzero on
  // every branch below the truncation.  nullopt = "no nonzero coefficient
  // below prec" (the series may vanish or have higher order).  Splits on
  // zero-divisor coefficients.
  std::optional<long> certified_order() const {
    for (int k = 0; k <= p_.deg(); ++k)
      if (static_cast<long>(k) < prec_ && !p_.coeff(k).is_zero() && !p_.coeff(k).test_zero())
        return k;
    return std::nullopt;
  }

  TSeries truncated(long n) const { return TSeries(p_, std::min(prec_, n)); }

  friend TSeries operator+(const TSeries& a, const TSeries& b) {
    return TSeries(a.p_ + b.p_, std::min(a.prec_, b.prec_));
  }
  friend TSeries operator-(const TSeries& a, const TSeries& b) {
    return TSeries(a.p_ - b.p_, std::min(a.prec_, b.prec_));
  }
  TSeries operator-() const { return TSeries(-p_, prec_); }
  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    long prec = std::min(detail::add_prec(a.prec_, b.repr_order()),
                         detail::add_prec(b.prec_, a.repr_order()));
    return TSeries(a.p_ * b.p_, prec);
  }
  friend TSeries operator*(const FieldElem& s, const TSeries& a) {
    return TSeries(s * a.p_, a.prec_);
  }

  TSeries pow(long e) const;  // negative exponents via unit_inverse

  std::string to_string() const {
    std::string s = p_.to_string();
    if (!is_exact()) s += " + O(" + var() + "^" + std::to_string(prec_) + ")";
    return s;
  }

 private:
  void chop() {
    if (prec_ == kExactSeries) return;
    if (prec_ < 0) prec_ = 0;
    VPoly c = p_.coeffs();
    if (static_cast<long>(c.size()) > prec_) c.resize(static_cast<std::size_t>(prec_));
    p_ = UniPoly(p_.var(), std::move(c));
  }
  UniPoly p_;
  long prec_;
};

// s with u·s ≡ 1 (mod var^N).  The constant term must be a unit; over a
// reducible level a zero-divisor constant term splits.
inline TSeries unit_inverse(const UniPoly& u, long N) {
  FieldElem u0 = u.coeff(0);
  if (u0.test_zero()) throw Error(ErrorCode::NotAUnit, "series has no inverse: zero constant term");
  FieldElem inv0 = u0.inverse();
  VPoly s(static_cast<std::size_t>(std::max<long>(N, 0)), FieldElem(0));
  if (N > 0) s[0] = inv0;
  for (long k = 1; k < N; ++k) {
    FieldElem acc(0);
    for (long i = 1; i <= k && i <= u.deg(); ++i)
      acc += u.coeff(static_cast<int>(i)) * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = -(inv0 * acc);
  }
  return TSeries(UniPoly(u.var(), std::move(s)), N);
}
inline TSeries unit_inverse(const TSeries& u, long N) {
  if (N > u.prec()) throw Error(ErrorCode::OrderViolation, "inverse requested beyond known precision");
  return unit_inverse(u.poly(), N);
}

inline TSeries TSeries::pow(long e) const {
  if (e < 0) {
    if (is_exact())
      throw Error(ErrorCode::OrderViolation,
                  "negative power of an exact polynomial: truncate first");
    return unit_inverse(*this, prec_).pow(-e);
  }
  TSeries r = TSeries::exact(UniPoly::monomial(var(), 0));
  TSeries b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// A d-th root of the unit u(0) in the tower of u's coefficients, preferring
// 1 when u(0) = 1.  RootNotInField when no root exists in the tower.
namespace detail {
inline FieldElem unit_const_root(const FieldElem& u0, long d) {
  if (u0.is_one()) return FieldElem(1);
  long ad = d < 0 ? -d : d;
  Rational q;
  if (as_rational(u0, q) && !u0.tower()) {
    auto r = exact_root(q, static_cast<unsigned long>(ad));
    if (!r)
      throw Error(ErrorCode::RootNotInField,
                  "constant term has no exact root of the requested degree");
    FieldElem root(*r);
    return d < 0 ? root.inverse() : root;
  }
  // Search the tower: roots of z^|d| − u0.
  VPoly c(static_cast<std::size_t>(ad) + 1, FieldElem(0));
  c[0] = -u0;
  c[static_cast<std::size_t>(ad)] = FieldElem(1);
  RootSplit rs = root_split(UniPoly("z", std::move(c)), u0.tower());
  if (rs.roots.empty())
    throw Error(ErrorCode::RootNotInField,
                "constant term has no root of the requested degree in the current tower");
  FieldElem root = rs.roots.front().first;
  return d < 0 ? root.inverse() : root;
}
}  // namespace detail

// r with r^d ≡ u (mod var^N); for u(0) = 1 the unique root with r(0) = 1.
inline TSeries unit_root(const UniPoly& u, long d, long N) {
  if (d == 0) throw Error(ErrorCode::Internal, "0th root requested");
  FieldElem u0 = u.coeff(0);
  if (u0.test_zero()) throw Error(ErrorCode::NotAUnit, "root of a non-unit series");
  if (d < 0) return unit_inverse(unit_root(u, -d, N), N);
  // Root searches should see the full coefficient tower even when the
  // constant term itself happens to be rational.
  if (TowerPtr tw = detail::finest_tower(u.coeffs()); tw && !u0.tower()) u0 = u0.promoted(tw);
  FieldElem r0 = detail::unit_const_root(u0, d);
  VPoly r(static_cast<std::size_t>(std::max<long>(N, 0)), FieldElem(0));
  if (N > 0) r[0] = r0;
  // d·r0^(d-1) is the linearization coefficient at each order.
  FieldElem lin = FieldElem(static_cast<long>(d));
  for (long i = 0; i < d - 1; ++i) lin *= r0;
  FieldElem lininv = lin.inverse();
  TSeries acc(UniPoly(u.var(), VPoly{r0}), N);  // running r, rebuilt each step
  for (long k = 1; k < N; ++k) {
    TSeries pw = acc.pow(d).truncated(k + 1);
    FieldElem resid = u.coeff(static_cast<int>(k)) - pw.coeff(static_cast<int>(k));
    r[static_cast<std::size_t>(k)] = lininv * resid;
    acc = TSeries(UniPoly(u.var(), VPoly(r.begin(), r.begin() + k + 1)), N);
  }
  return TSeries(UniPoly(u.var(), std::move(r)), N);
}

// Substitute a positive-order (or exact) series into a univariate
// polynomial: p(s).
inline TSeries compose(const UniPoly& p, const TSeries& s) {
  if (!s.is_exact() && !s.poly().is_zero() && s.poly().order() == 0)
    throw Error(ErrorCode::OrderViolation,
                "substituting a truncated series with a constant term");
  // Horner from the top coefficient down.
  TSeries r = TSeries::exact(UniPoly(s.var()));
  for (int k = p.deg(); k >= 0; --k) {
    r = r * s;
    r = r + TSeries::exact(UniPoly(s.var(), VPoly{p.coeff(k)}));
    if (!s.is_exact()) r = r.truncated(s.prec());
  }
  return r;
}

// v with v(x)^d · u(x·v(x)^e) ≡ 1 (mod x^N), solved order by order: the
// degree-k residual c is cancelled by the update v ← v + (−d⁻¹·s₀·c)·x^k.
inline TSeries scaling_solve(const UniPoly& u, long d, long e, long N) {
  if (d == 0) throw Error(ErrorCode::Internal, "scaling with d = 0");
  FieldElem u0 = u.coeff(0);
  if (u0.test_zero()) throw Error(ErrorCode::NotAUnit, "scaling a non-unit series");
  if (TowerPtr tw = detail::finest_tower(u.coeffs()); tw && !u0.tower()) u0 = u0.promoted(tw);
  FieldElem s0 = detail::unit_const_root(u0.inverse(), d);
  FieldElem step = -(FieldElem(static_cast<long>(d)).inverse() * s0);
  VPoly v(static_cast<std::size_t>(std::max<long>(N, 1)), FieldElem(0));
  v[0] = s0;
  for (long k = 1; k < N; ++k) {
    TSeries vk(UniPoly(u.var(), VPoly(v.begin(), v.begin() + k)), k + 1);
    TSeries xve = TSeries::exact(UniPoly::monomial(u.var(), 1)) * vk.pow(e);
    TSeries resid = vk.pow(d) * compose(u, xve.truncated(k + 1));
    FieldElem c = resid.coeff(static_cast<int>(k));
    v[static_cast<std::size_t>(k)] = step * c;
  }
  return TSeries(UniPoly(u.var(), std::move(v)), N);
}

// --- bivariate series ---------------------------------------------------------

class BiSeries {
 public:
  BiSeries() : prec_(kExactSeries) {}
  BiSeries(BiPoly p, long prec) : p_(std::move(p)), prec_(prec) { chop(); }
  static BiSeries exact(BiPoly p) { return BiSeries(std::move(p), kExactSeries); }

  const BiPoly& poly() const { return p_; }
  long prec() const { return prec_; }
  bool is_exact() const { return prec_ == kExactSeries; }
  bool known_zero() const { return is_exact() && p_.is_zero(); }

  long repr_order() const {
    if (p_.is_zero()) return prec_;
    return p_.terms().begin()->first.deg();
  }

  BiSeries truncated(long n) const { return BiSeries(p_, std::min(prec_, n)); }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    return BiSeries(a.p_ + b.p_, std::min(a.prec_, b.prec_));
  }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
    return BiSeries(a.p_ - b.p_, std::min(a.prec_, b.prec_));
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    long prec = std::min(detail::add_prec(a.prec_, b.repr_order()),
                         detail::add_prec(b.prec_, a.repr_order()));
    return BiSeries(a.p_ * b.p_, prec);
  }
  friend BiSeries operator*(const FieldElem& s, const BiSeries& a) {
    return BiSeries(s * a.p_, a.prec_);
  }
  BiSeries pow(long e) const;

  std::string to_string() const {
    std::string s = p_.to_string();
    if (!is_exact()) s += " + O(deg " + std::to_string(prec_) + ")";
    return s;
  }

 private:
  void chop() {
    if (prec_ == kExactSeries) return;
    if (prec_ < 0) prec_ = 0;
    BiPoly q;
    for (const auto& [m, c] : p_.terms())
      if (m.deg() < prec_) q.add_term(m, c);
    p_ = std::move(q);
  }
  BiPoly p_;
  long prec_;
};

// s with u·s ≡ 1 modulo total degree N.
inline BiSeries unit_inverse(const BiPoly& u, long N) {
  FieldElem u0 = u.coeff(0, 0);
  if (u0.test_zero()) throw Error(ErrorCode::NotAUnit, "series has no inverse: zero constant term");
  FieldElem inv0 = u0.inverse();
  BiSeries s(BiPoly(inv0), N);
  BiSeries uu(u, kExactSeries);
  // Order-by-order: append the degree-k correction −u0⁻¹ · [deg k](u·s − 1).
  for (long k = 1; k < N; ++k) {
    BiPoly resid = (uu * s).truncated(k + 1).poly() - BiPoly(FieldElem(1));
    BiPoly corr;
    for (const auto& [m, c] : resid.terms())
      if (m.deg() == k) corr.add_term(m, -(inv0 * c));
    s = BiSeries(s.poly() + corr, N);
  }
  return s;
}

inline BiSeries BiSeries::pow(long e) const {
  if (e < 0) {
    if (is_exact())
      throw Error(ErrorCode::OrderViolation,
                  "negative power of an exact polynomial: truncate first");
    return unit_inverse(p_, prec_).pow(-e);
  }
  BiSeries r = BiSeries::exact(BiPoly(FieldElem(1)));
  BiSeries b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// p(sx, sy) for truncated substitutions; sx, sy must have positive order
// unless exact.  Result precision follows the product rule per term.
inline BiSeries substitute(const BiPoly& p, const BiSeries& sx, const BiSeries& sy) {
  for (const BiSeries* s : {&sx, &sy})
    if (!s->is_exact() && !s->poly().is_zero() && s->repr_order() == 0)
      throw Error(ErrorCode::OrderViolation,
                  "substituting a truncated series with a constant term");
  std::vector<BiSeries> xs{BiSeries::exact(BiPoly(FieldElem(1)))};
  std::vector<BiSeries> ys{BiSeries::exact(BiPoly(FieldElem(1)))};
  BiSeries acc = BiSeries::exact(BiPoly());
  for (const auto& [m, c] : p.terms()) {
    while (static_cast<int>(xs.size()) <= m.i) xs.push_back(xs.back() * sx);
    while (static_cast<int>(ys.size()) <= m.j) ys.push_back(ys.back() * sy);
    acc = acc + c * (xs[static_cast<std::size_t>(m.i)] * ys[static_cast<std::size_t>(m.j)]);
  }
  return acc;
}

// p(sx(t), sy(t)) — the branch-pullback composition.
inline TSeries substitute(const BiPoly& p, const TSeries& sx, const TSeries& sy) {
  for (const TSeries* s : {&sx, &sy})
    if (!s->is_exact() && !s->poly().is_zero() && s->poly().order() == 0)
      throw Error(ErrorCode::OrderViolation,
                  "substituting a truncated series with a constant term");
  std::vector<TSeries> xs{TSeries::exact(UniPoly::monomial(sx.var(), 0))};
  std::vector<TSeries> ys{TSeries::exact(UniPoly::monomial(sx.var(), 0))};
  TSeries acc = TSeries::exact(UniPoly(sx.var()));
  for (const auto& [m, c] : p.terms()) {
    while (static_cast<int>(xs.size()) <= m.i) xs.push_back(xs.back() * sx);
    while (static_cast<int>(ys.size()) <= m.j) ys.push_back(ys.back() * sy);
    acc = acc + c * (xs[static_cast<std::size_t>(m.i)] * ys[static_cast<std::size_t>(m.j)]);
  }
  return acc;
}

}  // namespace curvelog
