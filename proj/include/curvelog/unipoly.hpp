#pragma once
// Univariate polynomials over a tower field level, tagged with a variable
// name.  Coefficients are stored densely, lowest degree first.  These are
// the workhorse for exceptional-curve point scans, Weierstrass-style root
// isolation, and the rational factorization front end.

#include <string>
#include <utility>
#include <vector>

#include "curvelog/errors.hpp"
#include "curvelog/tower.hpp"

namespace curvelog {

class UniPoly {
 public:
  UniPoly() : var_("x") {}
  explicit UniPoly(std::string var) : var_(std::move(var)) {}
  UniPoly(std::string var, VPoly coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
    vp::trim(c_);
  }
  static UniPoly monomial(std::string var, int k, FieldElem coef = FieldElem(1)) {
    VPoly c(static_cast<std::size_t>(k) + 1, FieldElem(0));
    c[static_cast<std::size_t>(k)] = std::move(coef);
    return UniPoly(std::move(var), std::move(c));
  }

  const std::string& var() const { return var_; }
  const VPoly& coeffs() const { return c_; }
  int deg() const { return vp::deg(c_); }
  bool is_zero() const { return c_.empty(); }
  FieldElem coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return FieldElem(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const FieldElem& lc() const {
    if (c_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
    return c_.back();
  }
  // Index of the lowest nonzero coefficient.
  int order() const {
    if (c_.empty()) throw Error(ErrorCode::ZeroPolynomial, "order of the zero polynomial");
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    throw Error(ErrorCode::Internal, "untrimmed polynomial");
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    a.check_var(b);
    return UniPoly(a.var_, vp::add(a.c_, b.c_));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    a.check_var(b);
    return UniPoly(a.var_, vp::sub(a.c_, b.c_));
  }
  UniPoly operator-() const { return UniPoly(var_, vp::neg(c_)); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    a.check_var(b);
    return UniPoly(a.var_, vp::mul(a.c_, b.c_));
  }
  friend UniPoly operator*(const FieldElem& s, const UniPoly& a) {
    return UniPoly(a.var_, vp::scale(a.c_, s));
  }

  // Quotient and remainder; exact over the field level of the coefficients.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
    check_var(d);
    auto [q, r] = vp::divrem(c_, d.c_);
    return {UniPoly(var_, std::move(q)), UniPoly(var_, std::move(r))};
  }
  // Exact division; remainder must vanish.
  UniPoly exact_div(const UniPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw Error(ErrorCode::Internal, "inexact polynomial division");
    return q;
  }

  UniPoly monic() const { return UniPoly(var_, vp::monic(c_)); }
  UniPoly derivative() const { return UniPoly(var_, vp::derivative(c_)); }
  FieldElem eval(const FieldElem& at) const { return vp::eval(c_, at); }

  UniPoly shifted_up(int k) const {  // multiply by var^k
    if (is_zero() || k == 0) return *this;
    VPoly c(c_.size() + static_cast<std::size_t>(k), FieldElem(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + static_cast<std::size_t>(k)] = c_[i];
    return UniPoly(var_, std::move(c));
  }
  UniPoly divided_by_power(int k) const {  // exact division by var^k
    if (k == 0) return *this;
    if (is_zero()) return *this;
    if (order() < k) throw Error(ErrorCode::Internal, "inexact division by a power of the variable");
    return UniPoly(var_, VPoly(c_.begin() + k, c_.end()));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.var_ != b.var_) return false;
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      std::string cs = c_[k].is_rational() ? curvelog::to_string(c_[k].rational_value())
                                           : "(" + c_[k].to_string() + ")";
      std::string piece;
      if (k == 0) {
        piece = cs;
      } else {
        piece = (cs == "1") ? "" : (cs == "-1" ? "-" : cs + "*");
        piece += var_;
        if (k >= 2) piece += "^" + std::to_string(k);
      }
      if (!out.empty()) out += " + ";
      out += piece;
    }
    return out;
  }

 private:
  void check_var(const UniPoly& other) const {
    if (var_ != other.var_)
      throw Error(ErrorCode::Internal, "mixed polynomial variables: " + var_ + " vs " + other.var_);
  }
  std::string var_;
  VPoly c_;
};

inline UniPoly gcd_monic(const UniPoly& a, const UniPoly& b) {
  return UniPoly(a.var(), vp::gcd_monic(a.coeffs(), b.coeffs()));
}

// Squarefree decomposition (Yun): returns monic pairwise-coprime squarefree
// factors with multiplicities, product = input up to the leading unit.
// Works over any tower level since the coefficient field has characteristic 0.
inline std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& f0) {
  std::vector<std::pair<UniPoly, int>> out;
  if (f0.deg() <= 0) return out;
  UniPoly f = f0.monic();
  UniPoly fp = f.derivative();
  UniPoly u = gcd_monic(f, fp);
  UniPoly v = f.exact_div(u);
  UniPoly w = fp.exact_div(u);
  int i = 1;
  while (v.deg() > 0) {
    UniPoly s = w - v.derivative();
    UniPoly p = gcd_monic(v, s);  // the multiplicity-i part (may be 1)
    if (p.deg() > 0) {
      out.emplace_back(p, i);
      v = v.exact_div(p);
      w = s.exact_div(p);
    } else {
      w = s;
    }
    ++i;
  }
  return out;
}

}  // namespace curvelog
