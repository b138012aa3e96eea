#pragma once
// Bivariate polynomials in x and y over a tower level.
//
// Terms are kept in a map ordered by total degree, ties broken toward the
// higher y-exponent; that order is also the canonical printing order, so
// equality of strings is equality of polynomials.  No zero coefficients are
// stored.  The multiplicity (lowest total degree) is a mathematical
// quantity: computing it over a reducible tower level routes every
// coefficient through the splitting zero test.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/errors.hpp"
#include "curvelog/tower.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {

struct Mono {
  int i = 0;  // exponent of x
  int j = 0;  // exponent of y
  int deg() const { return i + j; }
  friend bool operator==(const Mono& a, const Mono& b) { return a.i == b.i && a.j == b.j; }
};

// Graded order; within a degree the higher y-exponent comes first.
struct MonoCmp {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    return a.j > b.j;
  }
};

class BiPoly {
 public:
  using TermMap = std::map<Mono, FieldElem, MonoCmp>;

  BiPoly() = default;
  explicit BiPoly(const FieldElem& c) { add_term({0, 0}, c); }
  static BiPoly term(int i, int j, FieldElem c = FieldElem(1)) {
    BiPoly p;
    p.add_term({i, j}, std::move(c));
    return p;
  }
  static BiPoly x(int i = 1) { return term(i, 0); }
  static BiPoly y(int j = 1) { return term(0, j); }
  static BiPoly from_x_poly(const UniPoly& u) {
    BiPoly p;
    for (int k = 0; k <= u.deg(); ++k) p.add_term({k, 0}, u.coeff(k));
    return p;
  }
  static BiPoly from_y_poly(const UniPoly& u) {
    BiPoly p;
    for (int k = 0; k <= u.deg(); ++k) p.add_term({0, k}, u.coeff(k));
    return p;
  }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  FieldElem coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? FieldElem(0) : it->second;
  }
  // Highest term in the canonical order (for division).
  const std::pair<const Mono, FieldElem>& lead() const {
    if (t_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading term of zero");
    return *t_.rbegin();
  }
  int total_degree() const {
    if (t_.empty()) throw Error(ErrorCode::ZeroPolynomial, "degree of zero");
    return t_.rbegin()->first.deg();
  }

  // Multiplicity at the origin: lowest total degree of a (mathematically)
  // nonzero term.  Splits on zero-divisor coefficients.
  int mult_order() const {
    for (const auto& [m, c] : t_)
      if (!c.test_zero()) return m.deg();
    throw Error(ErrorCode::ZeroPolynomial, "multiplicity of the zero polynomial");
  }

  void add_term(Mono m, FieldElem c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
  }
  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return r;
  }
  friend BiPoly operator*(const FieldElem& s, const BiPoly& a) {
    BiPoly r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.t_) r.add_term(m, s * c);
    return r;
  }
  BiPoly pow(int e) const {
    if (e < 0) throw Error(ErrorCode::Internal, "negative power of a polynomial");
    BiPoly r(FieldElem(1));
    BiPoly b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  BiPoly partial(char var) const {
    BiPoly r;
    for (const auto& [m, c] : t_) {
      if (var == 'x' && m.i > 0)
        r.add_term({m.i - 1, m.j}, c * FieldElem(static_cast<long>(m.i)));
      else if (var == 'y' && m.j > 0)
        r.add_term({m.i, m.j - 1}, c * FieldElem(static_cast<long>(m.j)));
    }
    return r;
  }

  FieldElem eval(const FieldElem& x0, const FieldElem& y0) const {
    // Cache powers; exponents stay small.
    std::vector<FieldElem> xs{FieldElem(1)}, ys{FieldElem(1)};
    FieldElem acc(0);
    for (const auto& [m, c] : t_) {
      while (static_cast<int>(xs.size()) <= m.i) xs.push_back(xs.back() * x0);
      while (static_cast<int>(ys.size()) <= m.j) ys.push_back(ys.back() * y0);
      acc += c * xs[static_cast<std::size_t>(m.i)] * ys[static_cast<std::size_t>(m.j)];
    }
    return acc;
  }

  BiPoly swap_xy() const {
    BiPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(Mono{m.j, m.i}, c);
    return r;
  }

  // Exact division by x^k (every term must carry it).
  BiPoly divided_by_x(int k) const {
    BiPoly r;
    for (const auto& [m, c] : t_) {
      if (m.i < k) throw Error(ErrorCode::Internal, "not divisible by the x power");
      r.t_.emplace(Mono{m.i - k, m.j}, c);
    }
    return r;
  }
  BiPoly divided_by_y(int k) const {
    BiPoly r;
    for (const auto& [m, c] : t_) {
      if (m.j < k) throw Error(ErrorCode::Internal, "not divisible by the y power");
      r.t_.emplace(Mono{m.i, m.j - k}, c);
    }
    return r;
  }

  // Exact single-divisor division: *this must be a multiple of q.
  BiPoly exact_div(const BiPoly& q) const {
    if (q.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
    BiPoly r = *this, quot;
    const auto& [qm, qc] = q.lead();
    FieldElem qcinv = qc.inverse();
    while (!r.is_zero()) {
      const auto& [rm, rc] = r.lead();
      if (rm.i < qm.i || rm.j < qm.j)
        throw Error(ErrorCode::Internal, "inexact bivariate division");
      Mono m{rm.i - qm.i, rm.j - qm.j};
      FieldElem c = rc * qcinv;
      quot.add_term(m, c);
      r = r - BiPoly::term(m.i, m.j, c) * q;
    }
    return quot;
  }

  // The univariate polynomial p(x, 0) (var names the result's variable).
  UniPoly at_y0(const std::string& var = "x") const {
    VPoly c;
    for (const auto& [m, co] : t_) {
      if (m.j != 0) continue;
      if (static_cast<int>(c.size()) <= m.i) c.resize(static_cast<std::size_t>(m.i) + 1, FieldElem(0));
      c[static_cast<std::size_t>(m.i)] = co;
    }
    return UniPoly(var, std::move(c));
  }
  UniPoly at_x0(const std::string& var = "y") const {
    VPoly c;
    for (const auto& [m, co] : t_) {
      if (m.i != 0) continue;
      if (static_cast<int>(c.size()) <= m.j) c.resize(static_cast<std::size_t>(m.j) + 1, FieldElem(0));
      c[static_cast<std::size_t>(m.j)] = co;
    }
    return UniPoly(var, std::move(c));
  }
  // Coefficient of y^j as a polynomial in x.
  UniPoly y_slice(int j, const std::string& var = "x") const {
    VPoly c;
    for (const auto& [m, co] : t_) {
      if (m.j != j) continue;
      if (static_cast<int>(c.size()) <= m.i) c.resize(static_cast<std::size_t>(m.i) + 1, FieldElem(0));
      c[static_cast<std::size_t>(m.i)] = co;
    }
    return UniPoly(var, std::move(c));
  }
  int y_degree() const {
    int d = 0;
    for (const auto& kv : t_) d = std::max(d, kv.first.j);
    return d;
  }
  int x_degree() const {
    int d = 0;
    for (const auto& kv : t_) d = std::max(d, kv.first.i);
    return d;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin();
    auto ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib)
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  // Deterministic total order for sorting generator lists.
  static int compare(const BiPoly& a, const BiPoly& b) {
    auto ia = a.t_.begin();
    auto ib = b.t_.begin();
    MonoCmp less;
    for (; ia != a.t_.end() && ib != b.t_.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first)) return less(ia->first, ib->first) ? -1 : 1;
      int c = FieldElem::compare(ia->second, ib->second);
      if (c != 0) return c;
    }
    if (ia != a.t_.end()) return 1;
    if (ib != b.t_.end()) return -1;
    return 0;
  }

  // Canonical form: ascending total degree, ties with the higher
  // y-exponent first; output re-parses under the CLI grammar.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      std::string mono;
      if (m.i == 1) mono += "x";
      else if (m.i > 1) mono += "x^" + std::to_string(m.i);
      if (m.j == 1) mono += "y";
      else if (m.j > 1) mono += "y^" + std::to_string(m.j);
      std::string cs;
      if (c.is_rational()) {
        Rational q = c.rational_value();
        if (mono.empty()) cs = curvelog::to_string(q);
        else if (q == 1) cs = "";
        else if (q == -1) cs = "-";
        else cs = curvelog::to_string(q);
      } else {
        cs = "(" + c.to_string() + ")";
      }
      std::string termstr = cs + mono;
      if (out.empty()) {
        out = termstr;
      } else if (!termstr.empty() && termstr[0] == '-') {
        out += " - " + termstr.substr(1);
      } else {
        out += " + " + termstr;
      }
    }
    return out;
  }

 private:
  TermMap t_;
};

// Exact polynomial substitution p(sx, sy).
inline BiPoly substitute(const BiPoly& p, const BiPoly& sx, const BiPoly& sy) {
  std::vector<BiPoly> xs{BiPoly(FieldElem(1))}, ys{BiPoly(FieldElem(1))};
  BiPoly acc;
  for (const auto& [m, c] : p.terms()) {
    while (static_cast<int>(xs.size()) <= m.i) xs.push_back(xs.back() * sx);
    while (static_cast<int>(ys.size()) <= m.j) ys.push_back(ys.back() * sy);
    acc = acc + c * (xs[static_cast<std::size_t>(m.i)] * ys[static_cast<std::size_t>(m.j)]);
  }
  return acc;
}

inline BiPoly partial(const BiPoly& p, char var) { return p.partial(var); }
inline int mult_order(const BiPoly& p) { return p.mult_order(); }

}  // namespace curvelog
