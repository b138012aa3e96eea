#pragma once
// Embedded resolution of a reduced plane curve germ by iterated point
// blow-ups, over exact arithmetic in algebraic extension towers.
//
// The engine follows the strict transform of the input curve through a tree
// of infinitely near points.  At every point it keeps local coordinates
// centred there, the local equation of the strict transform, and the set of
// exceptional curves through the point.  Both standard blow-up charts keep
// every exceptional curve a coordinate axis:
//
//   chart A:  x = x', y = x'y'   (new exceptional curve: the x'-axis V(x');
//                                 the old y-axis survives as V(y'))
//   chart B:  x = x'y', y = y'   (new exceptional curve: V(y');
//                                 the old x-axis survives as V(x'))
//
// Chart A contains every point of the new exceptional line except the one
// vertical direction, which is exactly the origin of chart B — so scanning
// chart A for all finite intersection points and chart B only at its origin
// visits each point once.  Intersection points in chart A are the roots of
// a univariate polynomial; roots outside the current coefficient field are
// adjoined as one point of conjugacy degree d per irreducible factor of
// degree d, and a later zero test revealing a reducible adjunction re-runs
// the affected computation once per factor branch (the same dynamic
// evaluation discipline the tower layer uses everywhere).
//
// A point is blown up exactly when the reduced total transform — strict
// transform plus the exceptional axes through the point — is neither smooth
// nor an ordinary node there; those are the essential points.  The root is
// recorded even when it needs no blow-up, so a smooth or nodal input yields
// a root-only tree.

#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/germ.hpp"
#include "curvelog/qfactor.hpp"
#include "curvelog/tower.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {

struct ResolutionNode {
  int id = 0;
  int parent = -1;  // -1: a root of the tree
  int depth = 0;
  std::string chart;    // "A" or "B"; empty for a root
  std::string center;   // univariate factor locating the centre ("origin" at a chart-B origin)
  std::string history;  // chain of chart steps from the root
  BiPoly local;         // strict transform in coordinates centred at the point
  TowerPtr tower;       // coefficient tower of `local`
  long m = 0;           // multiplicity of the strict transform at the point
  int exc = 0;          // number of exceptional curves through the point
  long rtt = 0;         // multiplicity of the reduced total transform
  bool free_point = true;
  bool satellite = false;
  bool essential = false;  // reduced total transform neither smooth nor a node
  bool blown_up = false;
  long conj = 1;  // Galois-conjugate geometric points this node stands for
};

struct ResolutionTree {
  BiPoly input;
  std::vector<ResolutionNode> nodes;
  int blowups = 0;
};

namespace detail {

inline long abs_degree(const TowerPtr& t) { return t ? t->absolute_degree() : 1; }

// The deepest coefficient tower of p (all coefficient towers must lie on
// one extension chain).
inline TowerPtr finest_tower(const BiPoly& p) {
  TowerPtr finest;
  for (const auto& [mo, c] : p.terms()) {
    (void)mo;
    const TowerPtr& t = c.tower();
    if (!t || t == finest) continue;
    if (!finest || tower_contains(t, finest)) {
      finest = t;
    } else if (!tower_contains(finest, t)) {
      throw Error(ErrorCode::Internal, "coefficients from unrelated extension chains");
    }
  }
  return finest;
}

// Strict transform under one blow-up chart.  Terms below the multiplicity
// were proven zero when the multiplicity was computed and are dropped.
inline BiPoly chart_strict(const BiPoly& g, long m, bool first_chart) {
  BiPoly out;
  for (const auto& [mo, c] : g.terms()) {
    if (mo.deg() < m) continue;
    int shifted = static_cast<int>(mo.deg() - m);
    if (first_chart)
      out.add_term({shifted, mo.j}, c);
    else
      out.add_term({mo.i, shifted}, c);
  }
  return out;
}

inline BiPoly shift_y(const BiPoly& g, const FieldElem& r) {
  if (r.is_zero()) return g;
  return substitute(g, BiPoly::x(), BiPoly::y() + BiPoly(r));
}

inline long blowup_budget() {
  long cap = 50;
  if (const char* env = std::getenv("CURVELOG_MAX_BLOWUPS"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) cap = v;
  }
  return cap;
}

class Resolver {
 public:
  Resolver(BiPoly input, long cap) : cap_(cap) { tree_.input = std::move(input); }

  ResolutionTree run() {
    BlowState root;
    root.g = tree_.input;
    root.tower = finest_tower(tree_.input);
    root.base = root.tower;
    root.is_root = true;
    process(std::move(root));
    return std::move(tree_);
  }

 private:
  struct BlowState {
    BiPoly g;  // strict transform, local coordinates centred at the point
    TowerPtr tower;
    TowerPtr base;  // input tower along this branch (conjugacy reference)
    bool exc_x = false;
    bool exc_y = false;
    int depth = 0;
    int parent = -1;
    std::string chart;
    std::string center = "origin";
    std::string history = "origin";
    bool is_root = false;
  };

  // Conjugacy degree: how many geometric points the state stands for, i.e.
  // the relative degree of its tower over the branch's input tower.
  static long conj_of(const BlowState& st) {
    long whole = abs_degree(st.tower), base = abs_degree(st.base);
    if (base <= 0 || whole % base != 0)
      throw Error(ErrorCode::Internal, "conjugacy bookkeeping lost the tower chain");
    return whole / base;
  }

  // True when the reduced total transform is smooth or an ordinary node at
  // the point, so no further blow-up is needed there.
  static bool normal_crossing(const BlowState& st, long m) {
    int exc = static_cast<int>(st.exc_x) + static_cast<int>(st.exc_y);
    long rtt = m + exc;
    if (rtt <= 1) return true;
    if (rtt != 2) return false;
    if (m == 0) return true;  // transversal crossing of two exceptional axes
    if (m == 1) {
      // Smooth strict transform meeting one exceptional axis: normal
      // crossing unless its tangent line is that axis.
      if (st.exc_x) return !st.g.coeff(0, 1).test_zero();
      return !st.g.coeff(1, 0).test_zero();
    }
    // Double point with no exceptional curve (the root): an ordinary node
    // exactly when the tangent cone has two distinct directions.
    FieldElem a = st.g.coeff(2, 0), b = st.g.coeff(1, 1), c = st.g.coeff(0, 2);
    return !(b * b - FieldElem(4) * a * c).test_zero();
  }

  // Re-express a state on one factor branch of a discovered splitting.
  static BlowState branch_state(const BlowState& st, const TowerPtr& level, const VPoly& factor) {
    Projector pr(level, factor);
    BlowState out = st;
    out.tower = pr.map_tower(st.tower);
    out.base = pr.map_tower(st.base);
    BiPoly g;
    for (const auto& [mo, c] : st.g.terms()) g.add_term(mo, pr.map(c));
    out.g = std::move(g);
    return out;
  }

  void process(BlowState st) {
    long m = 0;
    bool nc = false;
    try {
      if (st.is_root) {
        if (!value_at_origin(st.g).test_zero())
          throw Error(ErrorCode::NotThroughOrigin, "the resolved curve must pass through the origin");
        BiPoly common =
            bivariate_gcd(bivariate_gcd(st.g, st.g.partial('x')), st.g.partial('y'));
        if (value_at_origin(common).test_zero())
          throw Error(ErrorCode::NonReducedInput,
                      "the input has a repeated component through the origin");
      }
      m = st.g.mult_order();
      nc = normal_crossing(st, m);
    } catch (const TowerSplit& sp) {
      process(branch_state(st, sp.level, sp.f1));
      process(branch_state(st, sp.level, sp.f2));
      return;
    }
    if (nc && !st.is_root) return;  // already normal crossing: not a tree node
    int exc = static_cast<int>(st.exc_x) + static_cast<int>(st.exc_y);
    ResolutionNode node;
    node.id = static_cast<int>(tree_.nodes.size());
    node.parent = st.parent;
    node.depth = st.depth;
    node.chart = st.chart;
    node.center = st.center;
    node.history = st.history;
    node.local = st.g;
    node.tower = st.tower;
    node.m = m;
    node.exc = exc;
    node.rtt = m + exc;
    node.free_point = exc <= 1;
    node.satellite = exc == 2;
    node.essential = !nc;
    node.blown_up = !nc;
    node.conj = conj_of(st);
    int id = node.id;
    tree_.nodes.push_back(std::move(node));
    if (!nc) expand(st, id, m);
  }

  void expand(const BlowState& st, int id, long m) {
    if (++tree_.blowups > cap_)
      throw Error(ErrorCode::ResolutionCapExceeded,
                  "blow-up budget of " + std::to_string(cap_) + " exceeded while resolving " +
                      tree_.input.to_string());
    std::vector<BlowState> kids;
    try {
      kids = enumerate(st, id, m);
    } catch (const TowerSplit& sp) {
      expand(branch_state(st, sp.level, sp.f1), id, m);
      expand(branch_state(st, sp.level, sp.f2), id, m);
      return;
    }
    for (auto& k : kids) process(std::move(k));
  }

  // All candidate points on the new exceptional line: the finite
  // intersections with the strict transform (chart A) and, when the strict
  // transform passes through it, the one point chart A misses (the chart-B
  // origin).  No node is recorded here, so a splitting may safely re-run it.
  std::vector<BlowState> enumerate(const BlowState& st, int id, long m) {
    std::vector<BlowState> kids;

    BiPoly ga = chart_strict(st.g, m, /*first_chart=*/true);
    RootSplit located = root_split(ga.at_x0("y"), st.tower);
    for (const auto& [r, mult] : located.roots) {
      (void)mult;
      bool at_origin = r.test_zero();
      BlowState k;
      k.g = shift_y(ga, r);
      k.tower = st.tower;
      k.base = st.base;
      k.exc_x = true;                      // the new exceptional curve
      k.exc_y = st.exc_y && at_origin;     // the old y-axis survives through y' = 0
      k.depth = st.depth + 1;
      k.parent = id;
      k.chart = "A";
      k.center = UniPoly("y", VPoly{-r, FieldElem(1)}).to_string();
      k.history = st.history + " -> A(" + k.center + ")";
      kids.push_back(std::move(k));
    }
    for (const auto& cl : located.clusters) {
      TowerPtr ext = Tower::extend(st.tower, cl.poly.coeffs(), gen_name(st.tower),
                                   cl.certified_irreducible);
      BlowState k;
      k.g = shift_y(ga, FieldElem::generator(ext));
      k.tower = ext;
      k.base = st.base;
      k.exc_x = true;
      k.exc_y = false;  // a cluster polynomial never vanishes at the origin
      k.depth = st.depth + 1;
      k.parent = id;
      k.chart = "A";
      k.center = cl.poly.to_string();
      k.history = st.history + " -> A(" + k.center + ")";
      kids.push_back(std::move(k));
    }

    BiPoly gb = chart_strict(st.g, m, /*first_chart=*/false);
    if (value_at_origin(gb).test_zero()) {
      BlowState k;
      k.g = std::move(gb);
      k.tower = st.tower;
      k.base = st.base;
      k.exc_x = st.exc_x;  // the old x-axis survives through the chart-B origin
      k.exc_y = true;      // the new exceptional curve
      k.depth = st.depth + 1;
      k.parent = id;
      k.chart = "B";
      k.center = "origin";
      k.history = st.history + " -> B(origin)";
      kids.push_back(std::move(k));
    }
    return kids;
  }

  static std::string gen_name(const TowerPtr& t) {
    return "a" + std::to_string((t ? t->height() : 0) + 1);
  }

  ResolutionTree tree_;
  long cap_ = 50;
};

}  // namespace detail

inline ResolutionTree resolve(const BiPoly& p) {
  if (p.is_zero())
    throw Error(ErrorCode::ZeroPolynomial, "cannot resolve the zero polynomial");
  return detail::Resolver(p, detail::blowup_budget()).run();
}

// Equisingular deformation count from the resolution: over the essential
// points, sum m(m+1)/2, subtract the number of free essential points and one
// more — each node weighted by its conjugacy degree.  An input whose reduced
// total transform is already smooth or an ordinary node has no essential
// points and yields 0.
inline long tau_es(const BiPoly& p) {
  ResolutionTree t = resolve(p);
  long total = 0, free_count = 0;
  bool any = false;
  for (const auto& n : t.nodes) {
    if (!n.essential) continue;
    any = true;
    total += n.conj * n.m * (n.m + 1) / 2;
    if (n.free_point) free_count += n.conj;
  }
  return any ? total - free_count - 1 : 0;
}

// Boundary-relative equisingular deformation count of a germ: resolve the
// union with the boundary line and discount the boundary's own contribution.
inline long tes_log(const CurveGerm& g) {
  long t = tau_es(BiPoly::y() * g.F);
  if (t == 0) return 0;  // smooth curve transversal to the boundary
  return t - (2 * static_cast<long>(g.w) - 1);
}

// Double-point number: sum of m(m-1)/2 over every infinitely near point of
// the curve, weighted by conjugacy degree.  Points that are never recorded
// as tree nodes are smooth on the strict transform and contribute 0.
inline long delta_res(const BiPoly& p) {
  ResolutionTree t = resolve(p);
  long total = 0;
  for (const auto& n : t.nodes) total += n.conj * n.m * (n.m - 1) / 2;
  return total;
}

inline std::string dump_tree(const ResolutionTree& t) {
  std::ostringstream os;
  os << "resolution of " << t.input.to_string() << ": " << t.blowups
     << (t.blowups == 1 ? " blow-up, " : " blow-ups, ") << t.nodes.size()
     << (t.nodes.size() == 1 ? " node\n" : " nodes\n");
  for (const auto& n : t.nodes) {
    os << "[" << n.id << "] ";
    if (n.parent < 0)
      os << "root: center=origin";
    else
      os << "parent=" << n.parent << " chart=" << n.chart << " center=" << n.center << ":";
    os << " m=" << n.m << " rtt=" << n.rtt << " exc=" << n.exc << " "
       << (n.satellite ? "satellite" : "free") << " "
       << (n.essential ? "essential" : "normal-crossing") << " conj=" << n.conj << "\n";
  }
  return os.str();
}

}  // namespace curvelog
