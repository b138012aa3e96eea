#pragma once
// Gröbner bases for ideals in x, y (with a third variable used internally
// for colon eliminations) over a tower level.
//
// Buchberger's algorithm with the sugar selection strategy and full
// auto-reduction; every returned basis is monic, reduced, and sorted by
// leading monomial, so recomputing from shuffled generators reproduces the
// same list byte for byte.  Colength and the standard-monomial basis come
// from the staircase of leading terms; the colon by a principal ideal goes
// through the classic single-auxiliary-variable elimination.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/tower.hpp"

namespace curvelog {

struct MonomialOrder {
  enum class Kind { Lex, DegRevLex, ElimZ };
  Kind kind = Kind::Lex;
  int first = 0;   // lex: highest variable slot (0 = x, 1 = y)
  int second = 1;  // lex: next slot

  static MonomialOrder lex_xy() { return {Kind::Lex, 0, 1}; }
  static MonomialOrder lex_yx() { return {Kind::Lex, 1, 0}; }
  static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0, 1}; }
  // z strictly dominates; ties resolved lex x > y.
  static MonomialOrder elim_z() { return {Kind::ElimZ, 0, 1}; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && a.first == b.first && a.second == b.second;
  }
};

namespace gb {

struct GMono {
  int e[3] = {0, 0, 0};  // exponents of x, y, z
  int deg() const { return e[0] + e[1] + e[2]; }
  bool divides(const GMono& m) const {
    return e[0] <= m.e[0] && e[1] <= m.e[1] && e[2] <= m.e[2];
  }
  friend GMono operator*(const GMono& a, const GMono& b) {
    return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]}};
  }
  friend GMono operator/(const GMono& a, const GMono& b) {
    return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2]}};
  }
  static GMono lcm(const GMono& a, const GMono& b) {
    return {{std::max(a.e[0], b.e[0]), std::max(a.e[1], b.e[1]), std::max(a.e[2], b.e[2])}};
  }
  friend bool operator==(const GMono& a, const GMono& b) {
    return a.e[0] == b.e[0] && a.e[1] == b.e[1] && a.e[2] == b.e[2];
  }
};

// Returns +1 if a > b, 0 if equal, −1 if a < b under the order.
inline int cmp(const MonomialOrder& o, const GMono& a, const GMono& b) {
  auto by = [](int x, int y) { return x < y ? -1 : (x > y ? 1 : 0); };
  switch (o.kind) {
    case MonomialOrder::Kind::Lex: {
      if (int c = by(a.e[o.first], b.e[o.first])) return c;
      if (int c = by(a.e[o.second], b.e[o.second])) return c;
      return by(a.e[2], b.e[2]);
    }
    case MonomialOrder::Kind::DegRevLex: {
      if (int c = by(a.deg(), b.deg())) return c;
      // reverse lexicographic: the monomial with the smaller exponent in the
      // last variable is larger
      if (int c = by(b.e[2], a.e[2])) return c;
      if (int c = by(b.e[o.second], a.e[o.second])) return c;
      return by(b.e[o.first], a.e[o.first]);
    }
    case MonomialOrder::Kind::ElimZ: {
      if (int c = by(a.e[2], b.e[2])) return c;
      if (int c = by(a.e[o.first], b.e[o.first])) return c;
      return by(a.e[o.second], b.e[o.second]);
    }
  }
  return 0;
}

struct Term {
  GMono m;
  FieldElem c;
};
// Terms sorted strictly descending in the active order.
using GPoly = std::vector<Term>;

inline GPoly normalize(GPoly p, const MonomialOrder& o) {
  std::sort(p.begin(), p.end(),
            [&](const Term& s, const Term& t) { return cmp(o, s.m, t.m) > 0; });
  GPoly out;
  for (auto& t : p) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c += t.c;
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// p − c·m·g, all inputs sorted descending.
inline GPoly sub_scaled(const GPoly& p, const FieldElem& c, const GMono& m, const GPoly& g,
                        const MonomialOrder& o) {
  GPoly out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    GMono gm = m * g[j].m;
    if (i == p.size()) {
      FieldElem v = -(c * g[j].c);
      if (!v.is_zero()) out.push_back({gm, v});
      ++j;
      continue;
    }
    int rel = cmp(o, p[i].m, gm);
    if (rel > 0) {
      out.push_back(p[i++]);
    } else if (rel < 0) {
      FieldElem v = -(c * g[j].c);
      if (!v.is_zero()) out.push_back({gm, v});
      ++j;
    } else {
      FieldElem v = p[i].c - c * g[j].c;
      if (!v.is_zero()) out.push_back({p[i].m, v});
      ++i;
      ++j;
    }
  }
  return out;
}

inline GPoly monic(GPoly p) {
  if (p.empty()) return p;
  FieldElem inv = p.front().c.inverse();
  for (auto& t : p) t.c = inv * t.c;
  return p;
}

// Full normal form of p with respect to basis (every term reduced).
inline GPoly normal_form(GPoly p, const std::vector<GPoly>& basis, const MonomialOrder& o) {
  GPoly rem;
  while (!p.empty()) {
    bool reduced = false;
    for (const GPoly& g : basis) {
      if (g.empty() || !g.front().m.divides(p.front().m)) continue;
      FieldElem c = p.front().c * g.front().c.inverse();
      p = sub_scaled(p, c, p.front().m / g.front().m, g, o);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(p.front());
      p.erase(p.begin());
    }
  }
  return rem;  // still sorted descending: leads strictly decrease
}

inline int poly_sugar(const GPoly& p) {
  int d = 0;
  for (const Term& t : p) d = std::max(d, t.m.deg());
  return d;
}

inline bool equal(const GPoly& a, const GPoly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k].m == b[k].m) || FieldElem::compare(a[k].c, b[k].c) != 0) return false;
  return true;
}

// Reduced Gröbner basis of the span of gens; deterministic.
inline std::vector<GPoly> buchberger_core(std::vector<GPoly> gens, const MonomialOrder& o) {
  std::vector<GPoly> basis;
  std::vector<int> sugar;
  for (auto& g : gens) {
    GPoly n = normalize(std::move(g), o);
    if (!n.empty()) {
      basis.push_back(monic(std::move(n)));
      sugar.push_back(poly_sugar(basis.back()));
    }
  }
  struct Pair {
    std::size_t i, j;
    GMono lcm;
    int sugar;
  };
  std::vector<Pair> pairs;
  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      GMono L = GMono::lcm(basis[i].front().m, basis[k].front().m);
      int s = std::max(sugar[i] + (L / basis[i].front().m).deg(),
                       sugar[k] + (L / basis[k].front().m).deg());
      pairs.push_back({i, k, L, s});
    }
  };
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

  while (!pairs.empty()) {
    // sugar strategy: smallest sugar, ties by lcm order then indices
    std::size_t best = 0;
    for (std::size_t t = 1; t < pairs.size(); ++t) {
      const Pair &A = pairs[t], &B = pairs[best];
      if (A.sugar != B.sugar ? A.sugar < B.sugar
                             : (cmp(o, A.lcm, B.lcm) != 0 ? cmp(o, A.lcm, B.lcm) < 0
                                                          : std::tie(A.i, A.j) < std::tie(B.i, B.j)))
        best = t;
    }
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    const GMono &mi = basis[pr.i].front().m, &mj = basis[pr.j].front().m;
    if (GMono::lcm(mi, mj) == mi * mj) continue;  // coprime leads: S-poly reduces to 0
    // S-polynomial u·f − v·g (both basis elements are monic)
    GPoly s = sub_scaled(GPoly{}, FieldElem(-1), pr.lcm / mi, basis[pr.i], o);
    s = sub_scaled(s, FieldElem(1), pr.lcm / mj, basis[pr.j], o);
    s = normal_form(std::move(s), basis, o);
    if (s.empty()) continue;
    basis.push_back(monic(std::move(s)));
    sugar.push_back(std::max(pr.sugar, poly_sugar(basis.back())));
    push_pairs(basis.size() - 1);
  }

  // Auto-reduction to the unique reduced basis.
  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 10000) throw Error(ErrorCode::Internal, "auto-reduction did not stabilize");
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      GPoly others_removed = std::move(basis[i]);
      std::vector<GPoly> rest;
      rest.reserve(basis.size() - 1);
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i && !basis[j].empty()) rest.push_back(basis[j]);
      GPoly r = normal_form(others_removed, rest, o);
      r = monic(std::move(r));
      if (!equal(r, others_removed)) changed = true;
      basis[i] = std::move(r);
      if (basis[i].empty()) {
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        sugar.erase(sugar.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  std::sort(basis.begin(), basis.end(), [&](const GPoly& a, const GPoly& b) {
    return cmp(o, a.front().m, b.front().m) > 0;
  });
  return basis;
}

}  // namespace gb

// --- public ideal API ---------------------------------------------------------

struct IdealBasis {
  std::vector<BiPoly> gens;
  MonomialOrder order = MonomialOrder::lex_yx();
  bool groebner = false;
};

namespace detail {
inline gb::GPoly to_gpoly(const BiPoly& p, const MonomialOrder& o) {
  gb::GPoly g;
  for (const auto& [m, c] : p.terms()) g.push_back({{{m.i, m.j, 0}}, c});
  return gb::normalize(std::move(g), o);
}
inline BiPoly from_gpoly(const gb::GPoly& g) {
  BiPoly p;
  for (const auto& t : g) {
    if (t.m.e[2] != 0) throw Error(ErrorCode::Internal, "auxiliary variable escaped elimination");
    p.add_term({t.m.e[0], t.m.e[1]}, t.c);
  }
  return p;
}
}  // namespace detail

// Reduced Gröbner basis of ⟨gens⟩ with respect to order.
inline IdealBasis buchberger(const std::vector<BiPoly>& gens, MonomialOrder order) {
  std::vector<gb::GPoly> in;
  in.reserve(gens.size());
  for (const BiPoly& p : gens)
    if (!p.is_zero()) in.push_back(detail::to_gpoly(p, order));
  std::vector<gb::GPoly> out = gb::buchberger_core(std::move(in), order);
  IdealBasis b;
  b.order = order;
  b.groebner = true;
  for (const auto& g : out) b.gens.push_back(detail::from_gpoly(g));
  return b;
}

inline IdealBasis as_groebner(const IdealBasis& I) {
  return I.groebner ? I : buchberger(I.gens, I.order);
}

// Normal form of p modulo I (I is converted to a Gröbner basis if needed).
inline BiPoly normal_form(const BiPoly& p, const IdealBasis& I) {
  IdealBasis G = as_groebner(I);
  std::vector<gb::GPoly> basis;
  basis.reserve(G.gens.size());
  for (const BiPoly& g : G.gens) basis.push_back(detail::to_gpoly(g, G.order));
  return detail::from_gpoly(gb::normal_form(detail::to_gpoly(p, G.order), basis, G.order));
}

inline bool ideal_member(const BiPoly& p, const IdealBasis& I) {
  return normal_form(p, I).is_zero();
}

// Do the generators already form a Gröbner basis (not necessarily reduced)?
inline bool is_groebner_basis(const std::vector<BiPoly>& gens, MonomialOrder order) {
  std::vector<gb::GPoly> basis;
  for (const BiPoly& p : gens)
    if (!p.is_zero()) basis.push_back(gb::monic(detail::to_gpoly(p, order)));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      gb::GMono L = gb::GMono::lcm(basis[i].front().m, basis[j].front().m);
      gb::GPoly s = gb::sub_scaled(gb::GPoly{}, FieldElem(-1), L / basis[i].front().m, basis[i], order);
      s = gb::sub_scaled(s, FieldElem(1), L / basis[j].front().m, basis[j], order);
      if (!gb::normal_form(std::move(s), basis, order).empty()) return false;
    }
  return true;
}

// Staircase data: minimal x-power a with x^a ∈ LT(I), minimal y-power, and
// for each x-column the minimal y-exponent in the leading-term ideal.
namespace detail {
struct Staircase {
  bool finite = false;
  int pure_x = -1;  // x^pure_x ∈ LT(I)
  std::vector<int> min_j;  // for i = 0..pure_x−1: column height
};
inline Staircase staircase(const IdealBasis& G) {
  Staircase s;
  std::vector<Mono> lts;
  for (const BiPoly& g : G.gens) {
    gb::GPoly gp = to_gpoly(g, G.order);
    lts.push_back({gp.front().m.e[0], gp.front().m.e[1]});
  }
  int px = -1, py = -1;
  for (const Mono& m : lts) {
    if (m.j == 0) px = px < 0 ? m.i : std::min(px, m.i);
    if (m.i == 0) py = py < 0 ? m.j : std::min(py, m.j);
  }
  if (px < 0 || py < 0) return s;  // a pure power is missing: infinite
  s.finite = true;
  s.pure_x = px;
  s.min_j.assign(static_cast<std::size_t>(px), py);
  for (int i = 0; i < px; ++i)
    for (const Mono& m : lts)
      if (m.i <= i) s.min_j[static_cast<std::size_t>(i)] = std::min(s.min_j[static_cast<std::size_t>(i)], m.j);
  return s;
}
}  // namespace detail

// Number of standard monomials; nullopt = infinite.
inline std::optional<long> colength(const IdealBasis& I) {
  IdealBasis G = as_groebner(I);
  if (G.gens.empty()) return std::nullopt;  // zero ideal
  detail::Staircase s = detail::staircase(G);
  if (!s.finite) return std::nullopt;
  long total = 0;
  for (int j : s.min_j) total += j;
  return total;
}

// The standard monomials, sorted ascending in the ideal's order.
inline std::vector<Mono> monomial_basis(const IdealBasis& I) {
  IdealBasis G = as_groebner(I);
  detail::Staircase s = G.gens.empty() ? detail::Staircase{} : detail::staircase(G);
  if (!s.finite)
    throw Error(ErrorCode::InfiniteColength, "standard monomial basis of a non-zero-dimensional ideal");
  std::vector<Mono> out;
  for (int i = 0; i < s.pure_x; ++i)
    for (int j = 0; j < s.min_j[static_cast<std::size_t>(i)]; ++j) out.push_back({i, j});
  std::sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) {
    return gb::cmp(G.order, {{a.i, a.j, 0}}, {{b.i, b.j, 0}}) < 0;
  });
  return out;
}

// I : ⟨g^power⟩ via elimination: J = ⟨z·f_i, (1−z)·g^power⟩, intersect with
// k[x, y], divide by g^power.
inline IdealBasis colon_principal(const IdealBasis& I, const BiPoly& g, int power) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "colon by the zero polynomial");
  if (power < 1) throw Error(ErrorCode::Internal, "colon power must be positive");
  if (I.gens.empty()) return IdealBasis{{}, I.order, true};
  BiPoly gp = g.pow(power);
  MonomialOrder elim = MonomialOrder::elim_z();
  std::vector<gb::GPoly> jgens;
  for (const BiPoly& f : I.gens) {
    gb::GPoly zf = detail::to_gpoly(f, elim);
    for (auto& t : zf) t.m.e[2] += 1;
    jgens.push_back(gb::normalize(std::move(zf), elim));
  }
  {
    gb::GPoly zg = detail::to_gpoly(gp, elim);
    gb::GPoly part = zg;  // (1−z)·g^power = g^power − z·g^power
    for (auto& t : zg) t.m.e[2] += 1;
    for (auto& t : zg) t.c = -t.c;
    for (auto& t : zg) part.push_back(t);
    jgens.push_back(gb::normalize(std::move(part), elim));
  }
  std::vector<gb::GPoly> basis = gb::buchberger_core(std::move(jgens), elim);
  std::vector<BiPoly> quotients;
  for (const auto& b : basis) {
    bool has_z = false;
    for (const auto& t : b)
      if (t.m.e[2] != 0) { has_z = true; break; }
    if (has_z) continue;
    quotients.push_back(detail::from_gpoly(b).exact_div(gp));
  }
  return buchberger(quotients, I.order);
}

enum class IdealRel { Equal, LeftInRight, RightInLeft, Incomparable };

inline IdealRel ideal_compare(const IdealBasis& I, const IdealBasis& J) {
  IdealBasis GI = as_groebner(I), GJ = as_groebner(J);
  auto contained = [](const IdealBasis& A, const IdealBasis& Bg) {
    for (const BiPoly& f : A.gens)
      if (!ideal_member(f, Bg)) return false;
    return true;
  };
  bool ij = contained(GI, GJ);
  bool ji = contained(GJ, GI);
  if (ij && ji) return IdealRel::Equal;
  if (ij) return IdealRel::LeftInRight;
  if (ji) return IdealRel::RightInLeft;
  return IdealRel::Incomparable;
}

}  // namespace curvelog
