#pragma once
// Branch-level data of a reduced plane curve germ at the origin.
//
// The central operation parametrizes every local branch by exact power
// series in an auxiliary variable t, over the smallest algebraic extension
// of the input coefficient field that supports it.  Conjugate branches are
// never enumerated separately: one representative is kept together with the
// degree of its coefficient field over the input field (`conj`), so counts
// and colengths come out right over the rationals.
//
// The expansion follows the classical Newton polygon, but each polygon edge
// of slope -p/q is handled through a rank-one substitution
//
//     x = rho^beta * x1^q,   y = rho^alpha * x1^p * (1 + y1),
//
// with alpha*q - beta*p = 1 and rho a root of the edge polynomial psi built
// from the lattice points of the edge.  Working with psi (whose roots are
// q-th powers of the classical edge roots) enumerates each branch exactly
// once instead of q times, and keeps every coefficient inside an explicit
// extension tower.  An edge root of multiplicity one leaves a tail equation
// with a simple solution, produced by Newton iteration; a tail that is
// exactly zero is recognized and kept exact.  Division of the equation by
// the strict power of y yields terminating branches; pure coordinate-axis
// components are split off first.
//
// On top of the parametrizations: certified vanishing orders of pullbacks
// along a branch, two valuation ideals (one from the minimal polar contact,
// one from the conductor exponents), the double-point count assembled
// branch by branch, and a report checking the inclusion chain between the
// deformation ideals of a germ.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/germ.hpp"
#include "curvelog/groebner.hpp"
#include "curvelog/logideals.hpp"
#include "curvelog/qfactor.hpp"
#include "curvelog/resolution.hpp"
#include "curvelog/series.hpp"
#include "curvelog/tower.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {

struct BranchParam {
  TSeries x{"t"};
  TSeries y{"t"};
  long ram = 1;    // t-order of x (of y for the vertical axis branch)
  long conj = 1;   // degree of the coefficient field over the input field
  TowerPtr tower;  // coefficients of x and y live over this tower
  bool axis = false;  // exact coordinate-axis component: x = 0 or y = 0

  // Refinement state: the substitution stages leading to this branch and
  // the equation of the remaining series tail.  The series above can be
  // recomputed from these to any precision; a zero tail equation (or one
  // divisible by its second variable) means the tail is exactly zero and
  // the parametrization is a finite, exact expression.
  struct Stage {
    long q = 1, p = 1;  // x -> gamma * x1^q,  y -> delta * x1^p * (1 + y1)
    FieldElem gamma{1};
    FieldElem delta{1};
  };
  std::vector<Stage> stages;
  BiPoly tail;        // equation of the tail; zero polynomial = exact tail
  TowerPtr base;      // coefficient tower of the (possibly projected) input
  long deg_bound = 0;  // total degree of the defining polynomial
  long built_prec = 0;  // precision the series were last rebuilt to
  bool stale = false;   // set after a coefficient-field projection

  // Scratch slots used by the valuation-ideal and double-point routines.
  long n_req = 0;
  long delta_part = 0;
};

namespace detail {

inline constexpr long kTruncationCap = 512;
inline constexpr int kExpansionDepthCap = 64;

inline FieldElem fe_pow(const FieldElem& b, long e) {
  if (e < 0) return fe_pow(b.inverse(), -e);
  FieldElem r(1);
  for (long i = 0; i < e; ++i) r = r * b;  // exponents here are tiny
  return r;
}

inline long inv_mod(long a, long m) {  // m >= 2, gcd(a, m) = 1
  long r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw Error(ErrorCode::Internal, "modular inverse of a non-unit");
  return ((s0 % m) + m) % m;
}

inline BiPoly map_terms(Projector& pr, const BiPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms()) r.add_term(m, pr.map(c));
  return r;
}

inline bool certified_zero_poly(const UniPoly& u) {
  for (int k = 0; k <= u.deg(); ++k) {
    const FieldElem c = u.coeff(k);
    if (!c.is_zero() && !c.test_zero()) return false;
  }
  return true;
}

// ---- Newton polygon bookkeeping -------------------------------------------

// Certified x-order of every y-column of g, with the certified-zero low
// terms removed so that later exponent arithmetic never goes negative.
struct PuiseuxColumns {
  std::vector<long> a;  // per column j: certified order, -1 for a zero column
  int jmin = -1;        // first mathematically nonzero column
  int jstar = -1;       // first column of order zero (none: -1)
  BiPoly cleaned;
};

inline PuiseuxColumns puiseux_columns(const BiPoly& g) {
  PuiseuxColumns out;
  const int jd = g.y_degree();
  out.a.assign(static_cast<std::size_t>(jd) + 1, -1);
  for (int j = 0; j <= jd; ++j) {
    UniPoly col = g.y_slice(j);
    for (int k = 0; k <= col.deg(); ++k) {
      const FieldElem c = col.coeff(k);
      if (c.is_zero() || c.test_zero()) continue;
      out.a[static_cast<std::size_t>(j)] = k;
      break;
    }
    const long aj = out.a[static_cast<std::size_t>(j)];
    if (aj < 0) continue;
    if (out.jmin < 0) out.jmin = j;
    if (aj == 0 && out.jstar < 0) out.jstar = j;
    for (int k = static_cast<int>(aj); k <= col.deg(); ++k)
      if (!col.coeff(k).is_zero()) out.cleaned.add_term({k, j}, col.coeff(k));
  }
  return out;
}

// Lower convex hull of the points (j, a_j), jmin <= j <= jstar: the edges of
// the Newton polygon with negative slope.  Collinear points are merged.
inline std::vector<std::pair<long, long>> polygon_vertices(const PuiseuxColumns& cd) {
  std::vector<std::pair<long, long>> pts;
  for (long j = cd.jmin; j <= cd.jstar; ++j)
    if (cd.a[static_cast<std::size_t>(j)] >= 0) pts.push_back({j, cd.a[static_cast<std::size_t>(j)]});
  std::vector<std::pair<long, long>> hull;
  auto cross = [](const std::pair<long, long>& o, const std::pair<long, long>& a,
                  const std::pair<long, long>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  for (const auto& pt : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
      hull.pop_back();
    hull.push_back(pt);
  }
  return hull;
}

// ---- series reconstruction -------------------------------------------------

// The unique series s with s(0) = 0 and G(t, s(t)) = 0 mod t^N, for a tail
// equation with G(0,0) = 0 and an invertible y-linear coefficient.  Newton
// iteration doubles the verified precision each round.
inline TSeries hensel_tail(const BiPoly& G, long N) {
  if (N < 1) N = 1;
  const BiPoly Gy = G.partial('y');
  const TSeries t_ex = TSeries::exact(UniPoly::monomial("t", 1));
  TSeries s(UniPoly("t"), 1);  // zero mod t
  long P = 1;
  while (P < N) {
    const long P2 = std::min(2 * P, N);
    s = TSeries(s.poly(), P2);
    TSeries num = substitute(G, t_ex, s).truncated(P2);
    TSeries den = substitute(Gy, t_ex, s).truncated(P2);
    TSeries corr = num * unit_inverse(den.poly(), P2);
    s = (s - corr).truncated(P2);
    P = P2;
  }
  return s;
}

inline TSeries scale_parameter(const TSeries& s, const FieldElem& lam) {
  VPoly c = s.poly().coeffs();
  FieldElem cur(1);
  for (auto& ck : c) {
    ck = ck * cur;
    cur = cur * lam;
  }
  return TSeries(UniPoly("t", std::move(c)), s.prec());
}

// Recompute b.x and b.y to precision N from the stored stages and tail.
inline void rebuild_branch(BranchParam& b, long N) {
  if (b.axis) {
    b.built_prec = std::max(b.built_prec, N);
    b.stale = false;
    return;
  }
  const bool exact_tail = b.tail.is_zero() || b.tail.at_y0("x").is_zero();
  TSeries tail = exact_tail ? TSeries::exact(UniPoly("t")) : hensel_tail(b.tail, N);
  const TSeries one = TSeries::exact(UniPoly("t", VPoly{FieldElem(1)}));
  TSeries ycur = tail;
  FieldElem lead(1);
  long E = 1;
  for (auto it = b.stages.rbegin(); it != b.stages.rend(); ++it) {
    UniPoly mono = UniPoly::monomial("t", static_cast<int>(it->p * E), it->delta);
    ycur = TSeries::exact(std::move(mono)) * (one + ycur);
    lead = it->gamma * fe_pow(lead, it->q);
    E *= it->q;
  }
  if (!lead.is_one()) {
    // Try to rescale t so that x becomes the bare monomial t^E.
    try {
      const FieldElem lam = unit_const_root(lead.inverse(), E);
      ycur = scale_parameter(ycur, lam);
      lead = FieldElem(1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RootNotInField) throw;
    }
  }
  b.x = TSeries::exact(UniPoly::monomial("t", static_cast<int>(E), lead));
  b.y = ycur;
  b.ram = E;
  b.built_prec = std::max(N, b.built_prec);
  b.stale = false;
}

inline void ensure_branch_prec(BranchParam& b, long N) {
  if (N > kTruncationCap)
    throw Error(ErrorCode::TruncationCapExceeded,
                "series precision " + std::to_string(N) + " exceeds the hard cap of " +
                    std::to_string(kTruncationCap));
  if (!b.stale) {
    if (b.axis) return;
    if (b.x.is_exact() && b.y.is_exact()) return;
    if (b.built_prec >= N) return;
  }
  rebuild_branch(b, std::max(N, b.built_prec));
}

// Project the refinement data of a branch into one factor of a split
// coefficient tower.  The series are left stale; the next ensure_branch_prec
// rebuilds them inside the caller's split guard.
inline BranchParam project_branch(const BranchParam& b, const TowerPtr& level, const VPoly& factor) {
  Projector pr(level, factor);
  BranchParam out = b;
  out.tower = pr.map_tower(b.tower);
  out.base = pr.map_tower(b.base);
  for (auto& st : out.stages) {
    st.gamma = pr.map(st.gamma);
    st.delta = pr.map(st.delta);
  }
  out.tail = map_terms(pr, b.tail);
  const long whole = abs_degree(out.tower), part = abs_degree(out.base);
  if (part <= 0 || whole % part != 0)
    throw Error(ErrorCode::Internal, "conjugacy bookkeeping lost the tower chain");
  out.conj = whole / part;
  out.stale = !out.axis;
  return out;
}

// Run fn on every branch; when the computation splits the coefficient field
// of a branch, replace it by its two projections and process both.
template <typename Fn>
void refine_branches(std::vector<BranchParam>& bs, Fn&& fn) {
  for (std::size_t i = 0; i < bs.size();) {
    try {
      fn(bs[i]);
      ++i;
    } catch (const TowerSplit& sp) {
      BranchParam orig = std::move(bs[i]);
      bs.erase(bs.begin() + static_cast<std::ptrdiff_t>(i));
      bs.insert(bs.begin() + static_cast<std::ptrdiff_t>(i), project_branch(orig, sp.level, sp.f2));
      bs.insert(bs.begin() + static_cast<std::ptrdiff_t>(i), project_branch(orig, sp.level, sp.f1));
    }
  }
}

// ---- the expansion engine ---------------------------------------------------

class PuiseuxExpander {
 public:
  PuiseuxExpander(const BiPoly& f, long extra) : f_(f), extra_(extra) {}

  std::vector<BranchParam> run() {
    if (f_.is_zero())
      throw Error(ErrorCode::ZeroPolynomial, "cannot parametrize the zero polynomial");
    PxNode root;
    root.g = f_;
    root.forig = f_;
    root.tower = finest_tower(f_);
    root.base = root.tower;
    family(std::move(root));
    return std::move(out_);
  }

 private:
  struct PxNode {
    BiPoly g;      // current equation, solved for y -> 0
    BiPoly forig;  // the (projected) input, for residual checks
    TowerPtr tower;
    TowerPtr base;
    std::vector<BranchParam::Stage> stages;
    int depth = 0;
  };

  BiPoly f_;
  long extra_ = 0;
  long target_ = 8;
  std::vector<BranchParam> out_;

  static PxNode project_node(const PxNode& nd, const TowerPtr& level, const VPoly& factor) {
    Projector pr(level, factor);
    PxNode out = nd;
    out.tower = pr.map_tower(nd.tower);
    out.base = pr.map_tower(nd.base);
    out.g = map_terms(pr, nd.g);
    out.forig = map_terms(pr, nd.forig);
    for (auto& st : out.stages) {
      st.gamma = pr.map(st.gamma);
      st.delta = pr.map(st.delta);
    }
    return out;
  }

  // Everything before the first emission is a pure probe, so a coefficient
  // split at this level can simply re-run both projections from scratch.
  void family(PxNode root) {
    try {
      validate(root);
      start(root);
    } catch (const TowerSplit& sp) {
      family(project_node(root, sp.level, sp.f1));
      family(project_node(root, sp.level, sp.f2));
    }
  }

  static void validate(const PxNode& root) {
    const FieldElem v0 = value_at_origin(root.g);
    if (!v0.is_zero() && !v0.test_zero())
      throw Error(ErrorCode::NotThroughOrigin, "the curve must pass through the origin");
    const BiPoly rad =
        bivariate_gcd(bivariate_gcd(root.g, root.g.partial('x')), root.g.partial('y'));
    const FieldElem r0 = value_at_origin(rad);
    if (r0.is_zero() || r0.test_zero())
      throw Error(ErrorCode::NonReducedInput,
                  "the input has a repeated component through the origin");
  }

  static BiPoly drop_x_once(const BiPoly& g) {
    BiPoly out;
    for (const auto& [m, c] : g.terms())
      if (m.i >= 1) out.add_term({m.i - 1, m.j}, c);
    return out;
  }

  static BiPoly drop_y_once(const BiPoly& g) {
    BiPoly out;
    for (const auto& [m, c] : g.terms())
      if (m.j >= 1) out.add_term({m.i, m.j - 1}, c);
    return out;
  }

  void emit_axis(const PxNode& nd, bool vertical) {
    BranchParam b;
    b.axis = true;
    b.tower = nd.tower;
    b.base = nd.base;
    b.deg_bound = nd.forig.total_degree();
    b.conj = 1;
    b.ram = 1;
    b.built_prec = target_;
    const TSeries t_ex = TSeries::exact(UniPoly::monomial("t", 1));
    const TSeries zero = TSeries::exact(UniPoly("t"));
    b.x = vertical ? zero : t_ex;
    b.y = vertical ? t_ex : zero;
    out_.push_back(std::move(b));
  }

  void start(PxNode root) {
    // Probe phase: every certified decision happens before any emission, so
    // the family-level split guard never duplicates output.
    const bool vertical = certified_zero_poly(root.g.at_x0("y"));
    BiPoly g1 = vertical ? drop_x_once(root.g) : root.g;
    const bool horizontal = certified_zero_poly(g1.at_y0("x"));
    BiPoly g2 = horizontal ? drop_y_once(g1) : g1;
    const FieldElem c0 = value_at_origin(g2);
    const bool interior = c0.is_zero() || c0.test_zero();

    long sumq = 0;
    if (interior) {
      const PuiseuxColumns cd = puiseux_columns(g2);
      if (cd.jmin != 0 || cd.jstar < 0)
        throw Error(ErrorCode::Internal, "axis component escaped extraction");
      const auto hull = polygon_vertices(cd);
      for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const long dj = hull[e + 1].first - hull[e].first;
        const long da = hull[e].second - hull[e + 1].second;
        const long gg = std::gcd(da, dj);
        sumq += dj / gg;
      }
    }
    target_ = 2 * (sumq + extra_);
    if (target_ < 8) target_ = 8;
    if (target_ > kTruncationCap)
      throw Error(ErrorCode::TruncationCapExceeded,
                  "requested truncation order " + std::to_string(target_) +
                      " exceeds the hard cap of " + std::to_string(kTruncationCap));

    if (vertical) emit_axis(root, true);
    if (horizontal) emit_axis(root, false);
    if (interior) {
      root.g = std::move(g2);
      expand(std::move(root));
    }
  }

  static std::string gen_name(const TowerPtr& t) {
    long h = 0;
    for (TowerPtr p = t; p; p = p->parent()) ++h;
    return "a" + std::to_string(h + 1);
  }

  PxNode make_child(const PxNode& nd, const BiPoly& g2, long q, long p, long ell, long alpha,
                    long beta, const FieldElem& rho, TowerPtr tw) const {
    // Precompute (1 + y)^j.
    int jd = g2.y_degree();
    std::vector<BiPoly> onep;
    onep.reserve(static_cast<std::size_t>(jd) + 1);
    onep.push_back(BiPoly(FieldElem(1)));
    const BiPoly onepy = BiPoly(FieldElem(1)) + BiPoly::y(1);
    for (int j = 1; j <= jd; ++j) onep.push_back(onep.back() * onepy);

    BiPoly g1;
    for (const auto& [m, c] : g2.terms()) {
      const long e = q * m.i + p * m.j - ell;
      if (e < 0) throw Error(ErrorCode::Internal, "edge exponent fell below the polygon");
      const FieldElem w = c * fe_pow(rho, beta * static_cast<long>(m.i) +
                                              alpha * static_cast<long>(m.j));
      g1 = g1 + BiPoly::term(static_cast<int>(e), 0, w) * onep[static_cast<std::size_t>(m.j)];
    }
    PxNode child;
    child.g = std::move(g1);
    child.forig = nd.forig;
    child.tower = std::move(tw);
    child.base = nd.base;
    child.stages = nd.stages;
    child.stages.push_back({q, p, fe_pow(rho, beta), fe_pow(rho, alpha)});
    child.depth = nd.depth + 1;
    return child;
  }

  void expand(PxNode nd) {
    if (nd.depth > kExpansionDepthCap)
      throw Error(ErrorCode::Internal, "branch expansion exceeded its depth cap");
    std::vector<std::pair<PxNode, bool>> children;  // (node, is_leaf)
    try {
      PuiseuxColumns cd = puiseux_columns(nd.g);
      if (cd.jmin < 0)
        throw Error(ErrorCode::Internal, "expansion reached a certified-zero equation");
      BiPoly g2 = cd.cleaned;
      if (cd.jmin > 0) {
        // The current approximation solves the equation exactly: one
        // terminating branch, plus whatever the quotient still carries.
        if (nd.depth == 0) throw Error(ErrorCode::Internal, "axis component escaped extraction");
        if (cd.jmin > 1)
          throw Error(ErrorCode::Internal, "repeated terminating branch in a reduced germ");
        PxNode leaf = nd;
        leaf.g = BiPoly();  // exact-zero tail
        children.push_back({std::move(leaf), true});
        g2 = drop_y_once(g2);
        cd = puiseux_columns(g2);
        if (cd.jmin != 0) {
          if (cd.jmin > 0)
            throw Error(ErrorCode::Internal, "repeated terminating branch in a reduced germ");
          g2 = BiPoly();  // quotient is certified zero: nothing further
        } else {
          g2 = cd.cleaned;
        }
      }
      if (!g2.is_zero() && cd.a[static_cast<std::size_t>(cd.jmin)] != 0) {
        if (cd.jstar < 0)
          throw Error(ErrorCode::Internal, "equation divisible by x inside the expansion");
        const auto hull = polygon_vertices(cd);
        for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
          const long j0 = hull[e].first, a0 = hull[e].second;
          const long j1 = hull[e + 1].first, a1 = hull[e + 1].second;
          const long gg = std::gcd(a0 - a1, j1 - j0);
          const long p = (a0 - a1) / gg, q = (j1 - j0) / gg;
          const long ell = q * a0 + p * j0;
          VPoly psi(static_cast<std::size_t>(gg) + 1, FieldElem(0));
          for (const auto& [m, c] : g2.terms()) {
            if (q * m.i + p * m.j != ell || m.j < j0 || m.j > j1) continue;
            psi[static_cast<std::size_t>((m.j - j0) / q)] += c;
          }
          const long alpha = p == 1 ? 0 : inv_mod(q, p);
          const long beta = (alpha * q - 1) / p;
          RootSplit rs = root_split(UniPoly("z", std::move(psi)), nd.tower);
          for (const auto& [rho, mult] : rs.roots)
            children.push_back(
                {make_child(nd, g2, q, p, ell, alpha, beta, rho, nd.tower), mult == 1});
          for (const auto& cl : rs.clusters) {
            TowerPtr ext = Tower::extend(nd.tower, cl.poly.coeffs(), gen_name(nd.tower),
                                         cl.certified_irreducible);
            children.push_back(
                {make_child(nd, g2, q, p, ell, alpha, beta, FieldElem::generator(ext), ext),
                 cl.mult == 1});
          }
        }
      }
    } catch (const TowerSplit& sp) {
      expand(project_node(nd, sp.level, sp.f1));
      expand(project_node(nd, sp.level, sp.f2));
      return;
    }
    for (auto& [child, is_leaf] : children) {
      if (is_leaf)
        finalize(std::move(child));
      else
        expand(std::move(child));
    }
  }

  void finalize(PxNode nd) {
    try {
      BranchParam b;
      b.stages = std::move(nd.stages);
      b.tail = std::move(nd.g);
      b.tower = nd.tower;
      b.base = nd.base;
      b.deg_bound = nd.forig.total_degree();
      const long whole = abs_degree(nd.tower), part = abs_degree(nd.base);
      if (part <= 0 || whole % part != 0)
        throw Error(ErrorCode::Internal, "conjugacy bookkeeping lost the tower chain");
      b.conj = whole / part;
      rebuild_branch(b, target_);
      TSeries resid = substitute(nd.forig, b.x, b.y);
      if (resid.certified_order().has_value())
        throw Error(ErrorCode::Internal, "branch parametrization failed its residual check");
      out_.push_back(std::move(b));
    } catch (const TowerSplit& sp) {
      finalize(project_node(nd, sp.level, sp.f1));
      finalize(project_node(nd, sp.level, sp.f2));
    }
  }
};

}  // namespace detail

// All branches of the vanishing locus of f through the origin.  extra_terms
// raises the default truncation order of the series tails.
inline std::vector<BranchParam> puiseux(const BiPoly& f, long extra_terms = 0) {
  detail::PuiseuxExpander ex(f, extra_terms);
  return ex.run();
}

inline std::vector<BranchParam> puiseux(const CurveGerm& g, long extra_terms = 0) {
  return puiseux(g.F, extra_terms);
}

// Vanishing order of h along the branch, certified by exact arithmetic;
// nullopt when h vanishes identically on the branch.  The series precision
// is raised on demand; once it passes the product of the total degrees, a
// branch of the curve and the locus of h would share a component, so the
// order is infinite.
inline std::optional<long> pullback_order(BranchParam& b, const BiPoly& h) {
  if (h.is_zero()) return std::nullopt;
  detail::ensure_branch_prec(b, std::max<long>(b.built_prec, 8));
  const long bound = b.deg_bound * std::max<long>(1, h.total_degree()) + 1;
  for (;;) {
    TSeries r = substitute(h, b.x, b.y);
    if (auto k = r.certified_order()) return k;
    if (r.is_exact()) return std::nullopt;
    if (r.prec() > bound) return std::nullopt;
    detail::ensure_branch_prec(b, std::max<long>(2 * b.built_prec, 16));
  }
}

namespace detail {

// ---- double points of one branch -------------------------------------------

inline TSeries series_constant(const FieldElem& c) {
  return TSeries::exact(UniPoly("t", VPoly{c}));
}

inline std::optional<long> ladder_order(const TSeries& s, bool& short_prec) {
  if (auto k = s.certified_order()) return k;
  if (s.is_exact()) return std::nullopt;  // identically zero
  short_prec = true;
  return std::nullopt;
}

inline TSeries chop_low(const TSeries& s, long k) {
  // Drop the (certified-zero) coefficients below t^k and divide by t^k.
  const VPoly& c = s.poly().coeffs();
  VPoly out;
  for (std::size_t i = static_cast<std::size_t>(k); i < c.size(); ++i) out.push_back(c[i]);
  const long prec = s.is_exact() ? kExactSeries : s.prec() - k;
  return TSeries(UniPoly("t", std::move(out)), prec);
}

inline TSeries ladder_div(const TSeries& v, const TSeries& u, long ord_u, long window) {
  TSeries vs = chop_low(v, ord_u), us = chop_low(u, ord_u);
  long N = std::min(vs.prec(), us.prec());
  if (N == kExactSeries) N = window;
  return (vs * unit_inverse(us.poly(), N)).truncated(N);
}

// Sum of m(m-1)/2 over the multiplicity sequence of the branch: repeatedly
// divide the higher-order coordinate by the lower-order one and recenter.
inline long ladder_delta(BranchParam& b) {
  ensure_branch_prec(b, std::max<long>(b.built_prec, 8));
  long window = 0;
  for (;;) {
    bool short_prec = false;
    long delta = 0;
    TSeries u = b.x, v = b.y;
    if (window == 0) {
      const long a0 = u.poly().is_zero() ? 1 : u.poly().order();
      const long c0 = v.poly().is_zero() ? 1 : v.poly().order();
      window = 2 * (a0 + c0) + 8;
    }
    for (int guard = 0;; ++guard) {
      if (guard > 10000)
        throw Error(ErrorCode::Internal, "multiplicity sequence failed to terminate");
      std::optional<long> a = ladder_order(u, short_prec);
      std::optional<long> c = ladder_order(v, short_prec);
      if (short_prec) break;
      if (!a && !c) throw Error(ErrorCode::Internal, "branch parametrization is constant");
      const long m = a && c ? std::min(*a, *c) : (a ? *a : *c);
      if (m <= 1) break;
      if (!a || !c) throw Error(ErrorCode::Internal, "branch collapsed onto a coordinate axis");
      delta += m * (m - 1) / 2;
      if (*a <= *c) {
        TSeries w = ladder_div(v, u, *a, window);
        v = w - series_constant(w.coeff(0));
      } else {
        TSeries w = ladder_div(u, v, *c, window);
        u = w - series_constant(w.coeff(0));
      }
    }
    if (!short_prec) return delta;
    if (b.x.is_exact() && b.y.is_exact()) {
      window *= 2;
      if (window > 8 * kTruncationCap)
        throw Error(ErrorCode::Internal, "multiplicity sequence exhausted its window");
    } else {
      ensure_branch_prec(b, std::max<long>(2 * b.built_prec, 16));
    }
  }
}

// ---- valuation ideals -------------------------------------------------------

// Rational coordinates of a tower element with respect to the monomial
// basis of the whole extension chain.
inline void q_coordinates(const FieldElem& e, const TowerPtr& t, std::vector<Rational>& out) {
  if (!t) {
    Rational q;
    if (!as_rational(e, q))
      throw Error(ErrorCode::Internal, "coefficient escaped its tower during flattening");
    out.push_back(q);
    return;
  }
  const long pd = abs_degree(t->parent());
  const FieldElem p = e.tower() == t ? e : e.promoted(t);
  const VPoly& rep = p.rep();
  for (long k = 0; k < t->degree(); ++k) {
    if (k < static_cast<long>(rep.size()))
      q_coordinates(rep[static_cast<std::size_t>(k)], t->parent(), out);
    else
      out.insert(out.end(), static_cast<std::size_t>(pd), Rational(0));
  }
}

inline std::vector<std::vector<Rational>> nullspace_basis(std::vector<std::vector<Rational>> m,
                                                          std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t sel = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const Rational inv = Rational(1) / m[r][c];
    for (std::size_t k = c; k < ncols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t pc : pivots) is_pivot[pc] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[c] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// The ideal of all polynomials whose pullback along branch i vanishes to
// order at least n_req(i): the nullspace of the coefficient constraints in
// degree < max n_req, plus every monomial of that degree.
inline IdealBasis valuation_ideal(std::vector<BranchParam>& bs) {
  const MonomialOrder order = MonomialOrder::lex_yx();
  long dstar = 0;
  for (const auto& b : bs) dstar = std::max(dstar, b.n_req);
  if (dstar <= 0) return buchberger({BiPoly(FieldElem(1))}, order);
  for (const auto& b : bs)
    if (b.base)
      throw Error(ErrorCode::Internal, "valuation ideals require rational input coefficients");

  std::vector<std::pair<int, int>> cols;
  for (long d = 0; d < dstar; ++d)
    for (long j = 0; j <= d; ++j) cols.push_back({static_cast<int>(d - j), static_cast<int>(j)});

  std::vector<std::vector<Rational>> rows;
  for (auto& b : bs) {
    if (b.n_req <= 0) continue;
    ensure_branch_prec(b, b.n_req);
    const long D = abs_degree(b.tower);
    std::vector<TSeries> xs{TSeries::exact(UniPoly("t", VPoly{FieldElem(1)}))};
    std::vector<TSeries> ys{xs[0]};
    for (long k = 1; k < dstar; ++k) {
      xs.push_back((xs.back() * b.x).truncated(b.n_req));
      ys.push_back((ys.back() * b.y).truncated(b.n_req));
    }
    std::vector<std::vector<Rational>> block(
        static_cast<std::size_t>(b.n_req * D),
        std::vector<Rational>(cols.size(), Rational(0)));
    for (std::size_t col = 0; col < cols.size(); ++col) {
      TSeries s = (xs[static_cast<std::size_t>(cols[col].first)] *
                   ys[static_cast<std::size_t>(cols[col].second)])
                      .truncated(b.n_req);
      for (long k = 0; k < b.n_req; ++k) {
        std::vector<Rational> co;
        q_coordinates(s.coeff(static_cast<int>(k)), b.tower, co);
        for (long l = 0; l < D; ++l)
          block[static_cast<std::size_t>(k * D + l)][col] = co[static_cast<std::size_t>(l)];
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
  }

  std::vector<BiPoly> gens;
  for (const auto& v : nullspace_basis(std::move(rows), cols.size())) {
    BiPoly g;
    for (std::size_t col = 0; col < cols.size(); ++col)
      if (v[col] != 0) g.add_term({cols[col].first, cols[col].second}, FieldElem(v[col]));
    gens.push_back(std::move(g));
  }
  for (long j = 0; j <= dstar; ++j)
    gens.push_back(BiPoly::term(static_cast<int>(dstar - j), static_cast<int>(j)));
  return buchberger(gens, order);
}

// Conductor exponent of one branch: the vanishing order of the y-partial
// along the branch, corrected by the ramification of x.  On the vertical
// axis branch the roles of the coordinates are exchanged.
inline long conductor_exponent(BranchParam& b, const BiPoly& fx, const BiPoly& fy) {
  std::optional<long> k;
  long corr = 0;
  if (b.x.known_zero()) {
    k = pullback_order(b, fx);
  } else {
    k = pullback_order(b, fy);
    corr = b.ram - 1;
  }
  if (!k)
    throw Error(ErrorCode::Internal, "conductor undefined along a branch of a reduced curve");
  const long d = *k - corr;
  if (d < 0) throw Error(ErrorCode::Internal, "negative conductor exponent");
  return d;
}

}  // namespace detail

// Valuation ideal of the minimal polar contact: branch i imposes vanishing
// to the smaller of the two pullback orders of the partial derivatives.
inline IdealBasis ideal_ec(const BiPoly& f) {
  std::vector<BranchParam> bs = puiseux(f);
  const BiPoly fx = f.partial('x'), fy = f.partial('y');
  detail::refine_branches(bs, [&](BranchParam& b) {
    const std::optional<long> nx = pullback_order(b, fx);
    const std::optional<long> ny = pullback_order(b, fy);
    if (!nx && !ny)
      throw Error(ErrorCode::Internal,
                  "both partial derivatives vanish along a branch of a reduced curve");
    b.n_req = nx && ny ? std::min(*nx, *ny) : (nx ? *nx : *ny);
  });
  return detail::valuation_ideal(bs);
}

inline IdealBasis ideal_ec(const CurveGerm& g) { return ideal_ec(g.F); }

// Valuation ideal of the conductor exponents.
inline IdealBasis ideal_cd(const BiPoly& f) {
  std::vector<BranchParam> bs = puiseux(f);
  const BiPoly fx = f.partial('x'), fy = f.partial('y');
  detail::refine_branches(bs, [&](BranchParam& b) {
    b.n_req = detail::conductor_exponent(b, fx, fy);
  });
  return detail::valuation_ideal(bs);
}

inline IdealBasis ideal_cd(const CurveGerm& g) { return ideal_cd(g.F); }

// Number of double points concentrated at the origin: per-branch counts from
// the multiplicity sequences plus the pairwise intersections, recovered as
// half the conductor surplus.  The surplus of each branch and the parity of
// the total are verified along the way.
inline long delta_branch(const BiPoly& f) {
  std::vector<BranchParam> bs = puiseux(f);
  const BiPoly fx = f.partial('x'), fy = f.partial('y');
  detail::refine_branches(bs, [&](BranchParam& b) {
    b.delta_part = detail::ladder_delta(b);
    b.n_req = detail::conductor_exponent(b, fx, fy);
    if (b.n_req < 2 * b.delta_part)
      throw Error(ErrorCode::IdentityViolation,
                  "conductor exponent fell below twice the double-point count of a branch");
  });
  long own = 0, surplus = 0;
  for (const auto& b : bs) {
    own += b.conj * b.delta_part;
    surplus += b.conj * (b.n_req - 2 * b.delta_part);
  }
  if (surplus % 2 != 0)
    throw Error(ErrorCode::IdentityViolation, "total inter-branch contact must be even");
  return own + surplus / 2;
}

inline long delta_branch(const CurveGerm& g) { return delta_branch(g.F); }

// ---- the inclusion chain of deformation ideals ------------------------------

struct ChainLink {
  std::string name;
  bool holds = false;
  std::optional<BiPoly> witness;  // a generator outside the larger ideal
};

struct ChainReport {
  std::vector<ChainLink> links;
  long tau_log = 0;
  long tes_log = 0;
  long tau_ec = 0;
  bool sandwich_holds = false;
  bool all_pass = false;
};

// Checks the containments between the deformation ideals of the germ and
// the numerical sandwich between their colengths and the blow-up count.
inline ChainReport inclusion_chain_check(const CurveGerm& g) {
  const IdealBasis ea = ideal_ea(g);
  const IdealBasis ealog = ideal_ea_log(g, LogRoute::ClosedForm);
  const IdealBasis ec = ideal_ec(g);
  const IdealBasis cd = ideal_cd(g);

  ChainReport r;
  auto link = [&](std::string name, const IdealBasis& from, const IdealBasis& into) {
    ChainLink l;
    l.name = std::move(name);
    l.holds = true;
    const IdealBasis gb = as_groebner(into);
    for (const BiPoly& f : from.gens) {
      if (ideal_member(f, gb)) continue;
      l.holds = false;
      l.witness = f;
      break;
    }
    r.links.push_back(std::move(l));
  };
  link("ea within ea_log", ea, ealog);
  link("ea_log within ec", ealog, ec);
  link("ec within cd", ec, cd);

  const auto cl_log = colength(ealog), cl_ec = colength(ec);
  if (!cl_log || !cl_ec)
    throw Error(ErrorCode::InfiniteColength, "a deformation ideal has infinite colength");
  r.tau_log = *cl_log;
  r.tes_log = tes_log(g);
  r.tau_ec = *cl_ec;
  r.sandwich_holds = r.tau_log >= r.tes_log && r.tes_log >= r.tau_ec;
  r.all_pass = r.sandwich_holds;
  for (const auto& l : r.links) r.all_pass = r.all_pass && l.holds;
  return r;
}

}  // namespace curvelog
