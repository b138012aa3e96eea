#pragma once
// Algebraic extension towers over ℚ with dynamic evaluation.
//
// A Tower is a chain ℚ ⊂ ℚ(a) ⊂ ℚ(a,b) ⊂ … where each level adjoins a root
// of a monic defining polynomial that is squarefree — not necessarily
// irreducible — over the field below.  A FieldElem is either a plain
// Rational (trivial tower) or a residue written in the canonical monomial
// basis of its level; all arithmetic reduces modulo the defining relations,
// so equality of representations is equality of elements.
//
// Because defining polynomials are only squarefree, a level may secretly be
// a product of fields.  Inversion detects this lazily: when the extended
// Euclidean algorithm meets a zero divisor, the discovered factorization of
// the defining polynomial is thrown as a TowerSplit, and the caller re-runs
// its computation once per factor branch (dynamic evaluation).  Data
// computed over one branch is valid for every root of that branch's factor,
// which is what makes conjugacy-degree bookkeeping sound downstream.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/errors.hpp"
#include "curvelog/numbers.hpp"

namespace curvelog {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class FieldElem;
// Dense univariate polynomial over one field level, lowest degree first,
// trailing zeros trimmed.  Empty vector = zero polynomial.
using VPoly = std::vector<FieldElem>;

// Thrown when a zero divisor reveals that `level`'s defining polynomial
// factors as f1·f2 (both monic, over level->parent()).
struct TowerSplit {
  TowerPtr level;
  VPoly f1;
  VPoly f2;
};

class FieldElem {
 public:
  FieldElem() : q_(0) {}
  FieldElem(const Rational& q) : q_(q) {}        // NOLINT: implicit by design
  FieldElem(long n) : q_(n) {}                   // NOLINT
  FieldElem(int n) : q_(static_cast<long>(n)) {} // NOLINT

  static FieldElem generator(const TowerPtr& t);
  // rep has coefficients over t->parent() (or promotable to it); reduced
  // modulo the defining polynomial if needed.
  static FieldElem make(const TowerPtr& t, VPoly rep);

  const TowerPtr& tower() const { return tw_; }
  bool is_rational() const { return tw_ == nullptr; }
  const Rational& rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::Internal, "not a rational element");
    return q_;
  }
  // Coefficient vector over the parent level (only for tower elements).
  const VPoly& rep() const { return rep_; }

  // Representation-level zero check: true only when the element is zero in
  // every branch.  Safe for trimming and printing, but NOT a mathematical
  // zero test over a reducible level — use test_zero() for decisions.
  bool is_zero() const { return is_rational() ? q_ == 0 : rep_.empty(); }
  // Mathematical zero test.  Over a level that is secretly a product of
  // fields an element can vanish in one factor only; this test detects that
  // through a gcd with the defining polynomial and throws TowerSplit so the
  // caller can branch.  Every control-flow decision that depends on
  // vanishing (orders, multiplicities, root checks) must go through here.
  bool test_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  FieldElem inverse() const;  // throws TowerSplit on zero divisor
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    return a * b.inverse();
  }
  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  // Deterministic total order within one tower (for stable sorting only).
  static int compare(const FieldElem& a, const FieldElem& b);

  // Re-express this element in a tower that contains this->tower() in its
  // ancestor chain.
  FieldElem promoted(const TowerPtr& target) const;

  std::string to_string() const;

 private:
  TowerPtr tw_;   // nullptr ⇒ rational
  Rational q_;    // valid iff tw_ == nullptr
  VPoly rep_;     // valid iff tw_ != nullptr; over tw_->parent(); trimmed
};

class Tower {
 public:
  const TowerPtr& parent() const { return parent_; }
  const VPoly& minpoly() const { return minpoly_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  int height() const { return height_; }
  const std::string& generator_name() const { return gen_; }
  long absolute_degree() const {
    long d = degree();
    for (TowerPtr p = parent_; p; p = p->parent()) d *= p->degree();
    return d;
  }

  // True when the defining polynomial is known to be irreducible (e.g. it
  // came out of the rational factorization), so the level is a genuine
  // field.  Elements over an all-certified chain never need zero-divisor
  // checks.
  bool certified_irreducible() const { return certified_; }
  bool chain_certified() const {
    for (const Tower* t = this; t; t = t->parent_.get())
      if (!t->certified_) return false;
    return true;
  }

  // Adjoin a root of `minpoly_any_lc` (any nonzero leading coefficient;
  // coefficients over `parent` or promotable to it).  Requires degree ≥ 2
  // and squarefreeness over the parent.
  static TowerPtr extend(const TowerPtr& parent, VPoly minpoly_any_lc,
                         std::string name = "", bool certified_irreducible = false);

 private:
  // Internal factory for branch projection: the minpoly is already monic
  // and squarefree by construction, so no checks (which could themselves
  // split) are performed.
  static TowerPtr raw_extend(const TowerPtr& parent, VPoly monic_minpoly, std::string name);
  friend class Projector;

  Tower() = default;
  TowerPtr parent_;
  VPoly minpoly_;  // monic over parent_
  std::string gen_;
  int height_ = 0;
  bool certified_ = false;
};

// --- dense univariate helpers over one field level -------------------------
namespace vp {

inline void trim(VPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline bool is_zero(const VPoly& p) { return p.empty(); }
inline int deg(const VPoly& p) { return static_cast<int>(p.size()) - 1; }

inline VPoly add(const VPoly& a, const VPoly& b) {
  VPoly r = a;
  if (r.size() < b.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline VPoly neg(const VPoly& a) {
  VPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}
inline VPoly sub(const VPoly& a, const VPoly& b) { return add(a, neg(b)); }
inline VPoly scale(const VPoly& a, const FieldElem& s) {
  if (s.is_zero()) return {};
  VPoly r = a;
  for (auto& c : r) c *= s;
  trim(r);
  return r;
}
inline VPoly mul(const VPoly& a, const VPoly& b) {
  if (a.empty() || b.empty()) return {};
  VPoly r(a.size() + b.size() - 1, FieldElem(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Polynomial division over a field level; the divisor's leading coefficient
// is inverted (which may throw TowerSplit when the level is reducible).
inline std::pair<VPoly, VPoly> divrem(const VPoly& num, const VPoly& den) {
  if (den.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  VPoly r = num;
  trim(r);
  if (deg(r) < deg(den)) return {{}, r};
  FieldElem lcinv = den.back().inverse();
  VPoly q(r.size() - den.size() + 1, FieldElem(0));
  while (!r.empty() && r.size() >= den.size()) {
    FieldElem c = r.back() * lcinv;
    std::size_t shift = r.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) r[shift + i] -= c * den[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

inline VPoly monic(const VPoly& p) {
  if (p.empty()) return p;
  return scale(p, p.back().inverse());
}

inline VPoly gcd_monic(VPoly a, VPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    VPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline VPoly derivative(const VPoly& p) {
  if (p.size() <= 1) return {};
  VPoly r(p.size() - 1, FieldElem(0));
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * FieldElem(static_cast<long>(i));
  trim(r);
  return r;
}

inline FieldElem eval(const VPoly& p, const FieldElem& at) {
  FieldElem acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * at + p[i];
  return acc;
}

// num mod m for monic m.
inline VPoly mod(const VPoly& num, const VPoly& m) { return divrem(num, m).second; }

}  // namespace vp

// --- FieldElem implementation ----------------------------------------------

inline FieldElem FieldElem::generator(const TowerPtr& t) {
  if (!t) throw Error(ErrorCode::Internal, "trivial tower has no generator");
  VPoly rep{FieldElem(0), FieldElem(1)};
  return make(t, std::move(rep));
}

inline FieldElem FieldElem::make(const TowerPtr& t, VPoly rep) {
  if (!t) throw Error(ErrorCode::Internal, "make() requires a nontrivial tower");
  for (auto& c : rep)
    if (c.tower() != t->parent()) c = c.promoted(t->parent());
  vp::trim(rep);
  if (vp::deg(rep) >= t->degree()) rep = vp::mod(rep, t->minpoly());
  FieldElem e;
  e.tw_ = t;
  e.rep_ = std::move(rep);
  return e;
}

inline bool FieldElem::is_one() const {
  if (is_rational()) return q_ == 1;
  return rep_.size() == 1 && rep_[0].is_one();
}

inline FieldElem FieldElem::promoted(const TowerPtr& target) const {
  if (tw_ == target) return *this;
  // collect the chain target → … → tw_
  std::vector<TowerPtr> chain;
  TowerPtr cur = target;
  while (cur != tw_) {
    if (!cur) throw Error(ErrorCode::Internal, "promotion target is not an extension of the element's tower");
    chain.push_back(cur);
    cur = cur->parent();
  }
  FieldElem e = *this;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    FieldElem w;
    w.tw_ = *it;
    if (!e.is_zero()) w.rep_ = VPoly{e};
    e = std::move(w);
  }
  return e;
}

namespace detail {
// Returns true when `anc` appears in the parent chain of `t` (inclusive).
inline bool tower_contains(const TowerPtr& t, const TowerPtr& anc) {
  TowerPtr cur = t;
  while (true) {
    if (cur == anc) return true;
    if (!cur) return false;
    cur = cur->parent();
  }
}
// Promote a and b to their common (finer) tower.
inline void align(FieldElem& a, FieldElem& b) {
  if (a.tower() == b.tower()) return;
  if (tower_contains(a.tower(), b.tower())) {
    b = b.promoted(a.tower());
  } else if (tower_contains(b.tower(), a.tower())) {
    a = a.promoted(b.tower());
  } else {
    throw Error(ErrorCode::Internal, "elements of unrelated towers combined");
  }
}
}  // namespace detail

inline FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  if (r.is_rational()) {
    r.q_ = -r.q_;
  } else {
    for (auto& c : r.rep_) c = -c;
  }
  return r;
}

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  FieldElem x = a, y = b;
  detail::align(x, y);
  if (x.is_rational()) {
    x.q_ += y.q_;
    return x;
  }
  x.rep_ = vp::add(x.rep_, y.rep_);
  return x;
}

inline FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

inline FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  FieldElem x = a, y = b;
  detail::align(x, y);
  if (x.is_rational()) {
    x.q_ *= y.q_;
    return x;
  }
  VPoly prod = vp::mul(x.rep_, y.rep_);
  return FieldElem::make(x.tw_, std::move(prod));
}

inline FieldElem FieldElem::inverse() const {
  if (is_rational()) {
    if (q_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    FieldElem r;
    r.q_ = 1 / q_;
    return r;
  }
  if (rep_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // Extended Euclid against the defining polynomial.  Invariant:
  // t1·rep ≡ r1 (mod minpoly).
  VPoly r0 = tw_->minpoly(), r1 = rep_;
  VPoly t0, t1{FieldElem(1)};
  while (!r1.empty()) {
    auto [q, r2] = vp::divrem(r0, r1);
    VPoly t2 = vp::sub(t0, vp::mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd(rep, minpoly), with t0·rep ≡ r0 (mod minpoly).
  if (vp::deg(r0) == 0) {
    VPoly inv = vp::scale(t0, r0[0].inverse());
    return FieldElem::make(tw_, std::move(inv));
  }
  // Zero divisor: the defining polynomial factors.
  VPoly f1 = vp::monic(r0);
  VPoly f2 = vp::divrem(tw_->minpoly(), f1).first;
  throw TowerSplit{tw_, std::move(f1), std::move(f2)};
}

inline bool FieldElem::test_zero() const {
  if (is_rational()) return q_ == 0;
  if (rep_.empty()) return true;
  if (tw_->chain_certified()) return false;  // genuine field: nonzero rep ⇒ nonzero
  VPoly g = vp::gcd_monic(rep_, tw_->minpoly());
  if (vp::deg(g) == 0) return false;  // unit in every branch
  // rep is reduced, so deg g < deg minpoly: a proper factor was found.
  VPoly other = vp::divrem(tw_->minpoly(), g).first;
  throw TowerSplit{tw_, std::move(g), std::move(other)};
}

inline bool operator==(const FieldElem& a, const FieldElem& b) {
  FieldElem x = a, y = b;
  detail::align(x, y);
  if (x.is_rational()) return x.q_ == y.q_;
  if (x.rep_.size() != y.rep_.size()) return false;
  for (std::size_t i = 0; i < x.rep_.size(); ++i)
    if (!(x.rep_[i] == y.rep_[i])) return false;
  return true;
}

inline int FieldElem::compare(const FieldElem& a, const FieldElem& b) {
  FieldElem x = a, y = b;
  detail::align(x, y);
  if (x.is_rational()) return curvelog::compare(x.q_, y.q_);
  if (x.rep_.size() != y.rep_.size()) return x.rep_.size() < y.rep_.size() ? -1 : 1;
  for (std::size_t i = x.rep_.size(); i-- > 0;) {
    int c = compare(x.rep_[i], y.rep_[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline std::string FieldElem::to_string() const {
  if (is_rational()) return curvelog::to_string(q_);
  if (rep_.empty()) return "0";
  const std::string& g = tw_->generator_name();
  std::string out;
  for (std::size_t k = 0; k < rep_.size(); ++k) {
    if (rep_[k].is_zero()) continue;
    std::string cs = rep_[k].is_rational() ? curvelog::to_string(rep_[k].rational_value())
                                           : "(" + rep_[k].to_string() + ")";
    std::string piece;
    if (k == 0) {
      piece = cs;
    } else {
      piece = (cs == "1") ? "" : cs + "*";
      piece += g;
      if (k >= 2) piece += "^" + std::to_string(k);
    }
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

// Extract the rational value of an element that merely *lives* in an
// extension but is in fact rational (constant representation all the way
// down).  Returns false when the element genuinely involves a generator.
inline bool as_rational(const FieldElem& e, Rational& out) {
  if (e.is_rational()) {
    out = e.rational_value();
    return true;
  }
  if (e.rep().empty()) {
    out = 0;
    return true;
  }
  if (e.rep().size() == 1) return as_rational(e.rep()[0], out);
  return false;
}

// --- Tower implementation ---------------------------------------------------

inline TowerPtr Tower::extend(const TowerPtr& parent, VPoly minpoly_any_lc,
                              std::string name, bool certified_irreducible) {
  for (auto& c : minpoly_any_lc)
    if (c.tower() != parent) c = c.promoted(parent);
  vp::trim(minpoly_any_lc);
  if (vp::deg(minpoly_any_lc) < 2)
    throw Error(ErrorCode::DegreeTooLow,
                "tower extensions need degree >= 2 (degree-1 relations are substitutions)");
  VPoly m = vp::monic(minpoly_any_lc);
  VPoly g = vp::gcd_monic(m, vp::derivative(m));
  if (vp::deg(g) >= 1)
    throw Error(ErrorCode::NonSquarefreeMinpoly,
                "defining polynomial is not squarefree over the tower");
  auto t = std::shared_ptr<Tower>(new Tower());
  t->parent_ = parent;
  t->minpoly_ = std::move(m);
  t->height_ = (parent ? parent->height() : 0) + 1;
  if (name.empty()) {
    // a, b, c, … by height
    name = std::string(1, static_cast<char>('a' + (t->height_ - 1) % 26));
  }
  t->gen_ = std::move(name);
  t->certified_ = certified_irreducible;
  return t;
}

inline TowerPtr Tower::raw_extend(const TowerPtr& parent, VPoly monic_minpoly,
                                  std::string name) {
  auto t = std::shared_ptr<Tower>(new Tower());
  t->parent_ = parent;
  t->minpoly_ = std::move(monic_minpoly);
  t->height_ = (parent ? parent->height() : 0) + 1;
  t->gen_ = std::move(name);
  return t;
}

// --- branch projection --------------------------------------------------------
//
// After a TowerSplit{level, f1, f2}, a computation is re-run once per
// factor.  A Projector re-expresses every tower and element onto one chosen
// branch: `level`'s defining polynomial is replaced by the factor
// (representations reduce modulo it), levels above it are rebuilt with
// projected defining polynomials, and a degree-1 factor collapses the level
// entirely by substituting the now-explicit root.  Factors of a squarefree
// polynomial are squarefree, and squarefreeness is witnessed by a Bezout
// identity that survives quotients, so the rebuilt chain needs no rechecks.
class Projector {
 public:
  Projector(TowerPtr level, VPoly monic_factor)
      : level_(std::move(level)), factor_(std::move(monic_factor)) {
    if (vp::deg(factor_) == 1) collapse_root_ = -factor_[0];  // over level_->parent()
  }

  // New tower for an old one (nullptr stays nullptr; a collapsed level maps
  // to its parent).
  TowerPtr map_tower(const TowerPtr& t) {
    if (!t) return nullptr;
    if (!tower_contains(t)) return t;  // entirely below the split level
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second;
    TowerPtr result;
    if (t == level_) {
      result = vp::deg(factor_) == 1
                   ? t->parent()
                   : Tower::raw_extend(t->parent(), factor_, t->generator_name());
    } else {
      TowerPtr np = map_tower(t->parent());
      VPoly m;
      m.reserve(t->minpoly().size());
      for (const auto& c : t->minpoly()) m.push_back(map(c));
      result = Tower::raw_extend(np, std::move(m), t->generator_name());
    }
    memo_.emplace(t.get(), result);
    return result;
  }

  FieldElem map(const FieldElem& e) {
    if (e.is_rational()) return e;
    const TowerPtr& t = e.tower();
    if (!tower_contains(t)) return e;
    if (t == level_) {
      if (vp::deg(factor_) == 1) return vp::eval(e.rep(), collapse_root_);
      return FieldElem::make(map_tower(t), vp::mod(e.rep(), factor_));
    }
    VPoly rep;
    rep.reserve(e.rep().size());
    for (const auto& c : e.rep()) rep.push_back(map(c));
    return FieldElem::make(map_tower(t), std::move(rep));
  }

  VPoly map(const VPoly& p) {
    VPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.push_back(map(c));
    vp::trim(r);
    return r;
  }

 private:
  bool tower_contains(const TowerPtr& t) const { return detail::tower_contains(t, level_); }
  TowerPtr level_;
  VPoly factor_;
  FieldElem collapse_root_;
  std::map<const Tower*, TowerPtr> memo_;
};

}  // namespace curvelog
