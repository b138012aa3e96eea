#pragma once
// Exact factorization of univariate polynomials over ℚ, and root isolation
// over tower levels.
//
// The rational factorization is the classical modular pipeline: Yun
// squarefree decomposition, reduction modulo a good prime, Cantor–Zassenhaus
// factorization in 𝔽_p[x], Hensel lifting of the modular factors to a
// precision beyond the coefficient bound, and subset recombination.  All
// randomness is drawn from a fixed-seed generator so results are
// reproducible bit for bit.
//
// Root isolation over a tower level never factors over the extension field:
// it peels off roots already visible in the tower (the adjoined generators
// and rational roots) and reports any residual factor of degree ≥ 2 as a
// conjugate cluster, to be adjoined wholesale by the caller.  Reducible
// clusters are harmless — later arithmetic detects them as zero divisors
// and the computation re-runs per factor branch.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/errors.hpp"
#include "curvelog/numbers.hpp"
#include "curvelog/tower.hpp"
#include "curvelog/unipoly.hpp"

namespace curvelog {
namespace zx {

// Dense integer polynomials, lowest degree first.
using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}
// Representative in (-m/2, m/2].
inline Integer mod_sym(const Integer& a, const Integer& m) {
  Integer r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline ZPoly reduce(ZPoly p, const Integer& m) {
  for (auto& c : p) c = mod_pos(c, m);
  trim(p);
  return p;
}
inline ZPoly reduce_sym(ZPoly p, const Integer& m) {
  for (auto& c : p) c = mod_sym(c, m);
  trim(p);
  return p;
}

inline ZPoly add_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r = a;
  if (r.size() < b.size()) r.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_pos(r[i] + b[i], m);
  trim(r);
  return r;
}
inline ZPoly sub_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r = a;
  if (r.size() < b.size()) r.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_pos(r[i] - b[i], m);
  trim(r);
  return r;
}
inline ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = mod_pos(c, m);
  trim(r);
  return r;
}
inline ZPoly scale_mod(const ZPoly& a, const Integer& s, const Integer& m) {
  ZPoly r = a;
  for (auto& c : r) c = mod_pos(c * s, m);
  trim(r);
  return r;
}

inline Integer inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::Internal, "modular inverse does not exist");
  return r;
}

// Division with remainder modulo m; lc(den) must be invertible mod m.
inline std::pair<ZPoly, ZPoly> divrem_mod(const ZPoly& num, const ZPoly& den, const Integer& m) {
  if (den.empty()) throw Error(ErrorCode::DivisionByZero, "modular polynomial division by zero");
  Integer lcinv = inv_mod(den.back(), m);
  ZPoly r = reduce(num, m);
  if (deg(r) < deg(den)) return {{}, r};
  ZPoly q(r.size() - den.size() + 1, Integer(0));
  while (!r.empty() && r.size() >= den.size()) {
    Integer c = mod_pos(r.back() * lcinv, m);
    std::size_t shift = r.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      r[shift + i] = mod_pos(r[shift + i] - c * den[i], m);
    trim(r);
  }
  trim(q);
  return {q, r};
}

inline ZPoly monic_mod(const ZPoly& p, const Integer& m) {
  if (p.empty()) return p;
  return scale_mod(p, inv_mod(p.back(), m), m);
}

inline ZPoly gcd_mod(ZPoly a, ZPoly b, const Integer& p) {
  a = reduce(a, p);
  b = reduce(b, p);
  while (!b.empty()) {
    ZPoly r = divrem_mod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic_mod(a, p);
}

inline ZPoly derivative(const ZPoly& p) {
  if (p.size() <= 1) return {};
  ZPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = Integer(static_cast<long>(i)) * p[i];
  trim(r);
  return r;
}

// base^exp mod (f, p) by binary exponentiation.
inline ZPoly powmod(ZPoly base, Integer exp, const ZPoly& f, const Integer& p) {
  ZPoly acc{Integer(1)};
  base = divrem_mod(base, f, p).second;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) acc = divrem_mod(mul_mod(acc, base, p), f, p).second;
    base = divrem_mod(mul_mod(base, base, p), f, p).second;
    exp >>= 1;
  }
  return acc;
}

}  // namespace zx

namespace detail {

// Distinct-degree decomposition of a monic squarefree f mod p:
// pairs (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<zx::ZPoly, int>> ddf(zx::ZPoly f, const Integer& p) {
  std::vector<std::pair<zx::ZPoly, int>> out;
  zx::ZPoly h{Integer(0), Integer(1)};  // x
  int d = 0;
  while (zx::deg(f) > 0) {
    ++d;
    if (2 * d > zx::deg(f)) {
      out.emplace_back(f, zx::deg(f));
      break;
    }
    h = zx::powmod(h, p, f, p);  // x^(p^d) mod f
    zx::ZPoly hx = zx::sub_mod(h, zx::ZPoly{Integer(0), Integer(1)}, p);
    zx::ZPoly g = zx::gcd_mod(hx, f, p);
    if (zx::deg(g) > 0) {
      out.emplace_back(g, d);
      f = zx::divrem_mod(f, g, p).first;
      h = zx::divrem_mod(h, f, p).second;
    }
  }
  return out;
}

// Equal-degree splitting (Cantor–Zassenhaus, p odd): f monic squarefree,
// every irreducible factor of degree d.
inline void edf(const zx::ZPoly& f, int d, const Integer& p, std::mt19937_64& rng,
                std::vector<zx::ZPoly>& out) {
  if (zx::deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer pd;
  mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
  Integer exp = (pd - 1) / 2;
  unsigned long pl = mpz_get_ui(p.get_mpz_t());
  while (true) {
    zx::ZPoly r(static_cast<std::size_t>(zx::deg(f)), Integer(0));
    for (auto& c : r) c = Integer(static_cast<unsigned long>(rng() % pl));
    zx::trim(r);
    if (zx::deg(r) < 1) continue;
    zx::ZPoly g = zx::gcd_mod(r, f, p);
    if (zx::deg(g) == 0 || zx::deg(g) == zx::deg(f)) {
      zx::ZPoly s = zx::powmod(r, exp, f, p);
      s = zx::sub_mod(s, zx::ZPoly{Integer(1)}, p);
      g = zx::gcd_mod(s, f, p);
    }
    if (zx::deg(g) > 0 && zx::deg(g) < zx::deg(f)) {
      edf(g, d, p, rng, out);
      edf(zx::divrem_mod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

// One linear Hensel step: P ≡ G·H (mod p^k) with G monic lifts to mod p^(k+1).
// A·G + B·H ≡ 1 (mod p) is the fixed Bezout certificate.
inline void hensel_step(const zx::ZPoly& P, zx::ZPoly& G, zx::ZPoly& H, const zx::ZPoly& A,
                        const zx::ZPoly& B, const Integer& p, const Integer& pk) {
  Integer pk1 = pk * p;
  // t = (P − G·H)/p^k mod p
  zx::ZPoly GH = zx::mul_mod(G, H, pk1);
  zx::ZPoly diff = zx::sub_mod(zx::reduce(P, pk1), GH, pk1);
  zx::ZPoly t;
  t.reserve(diff.size());
  for (auto& c : diff) t.push_back(zx::mod_pos(c / pk, p));
  zx::trim(t);
  if (t.empty()) return;  // already exact at this precision
  auto [q, u] = zx::divrem_mod(zx::mul_mod(B, t, p), G, p);
  zx::ZPoly v = zx::add_mod(zx::mul_mod(A, t, p), zx::mul_mod(q, H, p), p);
  // G += p^k·u, H += p^k·v (coefficients kept in [0, p^(k+1)))
  auto lift_add = [&](zx::ZPoly& target, const zx::ZPoly& corr) {
    if (target.size() < corr.size()) target.resize(corr.size(), Integer(0));
    for (std::size_t i = 0; i < corr.size(); ++i)
      target[i] = zx::mod_pos(target[i] + pk * corr[i], pk1);
    zx::trim(target);
  };
  for (auto& c : G) c = zx::mod_pos(c, pk1);
  for (auto& c : H) c = zx::mod_pos(c, pk1);
  lift_add(G, u);
  lift_add(H, v);
}

// Lift the factorization P ≡ lc·∏ facs (mod p) to mod p^e, recursively
// splitting the factor list (factor-tree lifting with two-factor steps).
// On return every facs[i] in [lo, hi) is the lifted factor, monic mod p^e.
inline void hensel_tree(const zx::ZPoly& P, std::vector<zx::ZPoly>& facs, std::size_t lo,
                        std::size_t hi, const Integer& p, int e) {
  Integer pe;
  mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  if (hi - lo == 1) {
    facs[lo] = zx::monic_mod(zx::reduce(P, pe), pe);
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  zx::ZPoly G{Integer(1)}, H{Integer(1)};
  for (std::size_t i = lo; i < mid; ++i) G = zx::mul_mod(G, facs[i], p);
  for (std::size_t i = mid; i < hi; ++i) H = zx::mul_mod(H, facs[i], p);
  // Normalize so G is monic and H carries lc(P) mod p.
  G = zx::monic_mod(G, p);
  Integer lc = zx::reduce(P, p).back();
  H = zx::scale_mod(zx::monic_mod(H, p), lc, p);
  // Bezout certificate A·G + B·H ≡ 1 (mod p) via extended Euclid.
  zx::ZPoly r0 = G, r1 = H;
  zx::ZPoly a0{Integer(1)}, a1{}, b0{}, b1{Integer(1)};
  while (!r1.empty()) {
    auto [q, r2] = zx::divrem_mod(r0, r1, p);
    zx::ZPoly a2 = zx::sub_mod(a0, zx::mul_mod(q, a1, p), p);
    zx::ZPoly b2 = zx::sub_mod(b0, zx::mul_mod(q, b1, p), p);
    r0 = std::move(r1); r1 = std::move(r2);
    a0 = std::move(a1); a1 = std::move(a2);
    b0 = std::move(b1); b1 = std::move(b2);
  }
  if (zx::deg(r0) != 0)
    throw Error(ErrorCode::Internal, "modular factors not coprime during lifting");
  Integer inv = zx::inv_mod(r0[0], p);
  zx::ZPoly A = zx::scale_mod(a0, inv, p);
  zx::ZPoly B = zx::scale_mod(b0, inv, p);
  Integer pk = p;
  for (int k = 1; k < e; ++k) {
    hensel_step(P, G, H, A, B, p, pk);
    pk *= p;
  }
  hensel_tree(G, facs, lo, mid, p, e);
  hensel_tree(H, facs, mid, hi, p, e);
}

}  // namespace detail

namespace detail {

// Exact division in ℤ[x]; returns false when not exact.
inline bool try_exact_div_z(const zx::ZPoly& num, const zx::ZPoly& den, zx::ZPoly& quot) {
  if (den.empty()) return false;
  std::vector<Rational> r(num.begin(), num.end());
  std::vector<Rational> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
  auto rdeg = [&]() {
    int d = static_cast<int>(r.size()) - 1;
    while (d >= 0 && r[static_cast<std::size_t>(d)] == 0) --d;
    return d;
  };
  Rational lcd(den.back());
  int dd = zx::deg(den);
  int nd;
  while ((nd = rdeg()) >= dd) {
    Rational c = r[static_cast<std::size_t>(nd)] / lcd;
    q[static_cast<std::size_t>(nd - dd)] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      r[static_cast<std::size_t>(nd - dd) + i] -= c * Rational(den[i]);
  }
  if (rdeg() >= 0) return false;
  quot.clear();
  for (const auto& c : q) {
    if (!is_integer(c)) return false;
    quot.push_back(c.get_num());
  }
  zx::trim(quot);
  return true;
}

inline zx::ZPoly primitive_part(zx::ZPoly p) {
  zx::trim(p);
  if (p.empty()) return p;
  Integer g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// Factor a primitive squarefree integer polynomial into primitive
// irreducible integer polynomials (Zassenhaus).
inline std::vector<zx::ZPoly> factor_squarefree_z(zx::ZPoly P) {
  std::vector<zx::ZPoly> out;
  zx::trim(P);
  if (zx::deg(P) <= 0) return out;
  if (zx::deg(P) == 1) {
    out.push_back(primitive_part(P));
    return out;
  }
  // Choose an odd prime keeping P squarefree with invertible lc.
  Integer p(1);
  while (true) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p == 2) continue;
    if (P.back() % p == 0) continue;
    zx::ZPoly fp = zx::reduce(P, p);
    if (zx::deg(zx::gcd_mod(fp, zx::derivative(fp), p)) == 0) break;
  }
  zx::ZPoly fbar = zx::monic_mod(zx::reduce(P, p), p);
  std::mt19937_64 rng(0x5bd1e995u);  // fixed seed: reproducible runs
  std::vector<zx::ZPoly> mod_facs;
  for (const auto& [g, d] : ddf(fbar, p)) edf(g, d, p, rng, mod_facs);
  std::sort(mod_facs.begin(), mod_facs.end(), [](const zx::ZPoly& a, const zx::ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  if (mod_facs.size() == 1) {
    out.push_back(primitive_part(P));
    return out;
  }
  // Coefficient bound: any integer factor of P has sup-norm ≤ 2^n·‖P‖₂;
  // candidates are scaled by lc(P), so lift beyond 2·|lc|·2^n·‖P‖₂.
  Integer norm2(0);
  for (const auto& c : P) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = abs(P.back()) * norm;
  bound <<= (zx::deg(P) + 1);  // 2 · 2^n
  int e = 1;
  Integer pe = p;
  while (pe <= bound) {
    pe *= p;
    ++e;
  }
  hensel_tree(zx::reduce(P, pe), mod_facs, 0, mod_facs.size(), p, e);
  // Subset recombination.
  std::vector<zx::ZPoly> pool = mod_facs;
  zx::ZPoly cur = P;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      zx::ZPoly cand{zx::mod_pos(cur.back(), pe)};
      for (std::size_t i : idx) cand = zx::mul_mod(cand, pool[i], pe);
      cand = zx::reduce_sym(cand, pe);
      cand = primitive_part(cand);
      zx::ZPoly quot;
      if (zx::deg(cand) >= 1 && try_exact_div_z(cur, cand, quot)) {
        out.push_back(cand);
        cur = quot;
        std::vector<zx::ZPoly> rest;
        for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          rest.push_back(pool[i]);
        }
        pool = std::move(rest);
        found = true;
        break;
      }
      // next s-subset in lexicographic order
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == pool.size() - s + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t i = k; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zx::deg(cur) >= 1) out.push_back(primitive_part(cur));
  return out;
}

}  // namespace detail

// Factor a polynomial with rational coefficients into monic irreducible
// factors over ℚ with multiplicities, sorted by degree then coefficients.
// The input's leading coefficient and any content are discarded.
inline std::vector<std::pair<UniPoly, int>> uni_factor_rational(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "factorization of the zero polynomial");
  std::vector<Rational> rc;
  rc.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    Rational q;
    if (!as_rational(c, q))
      throw Error(ErrorCode::Internal, "rational factorization of a non-rational polynomial");
    rc.push_back(q);
  }
  std::vector<std::pair<UniPoly, int>> result;
  if (f.deg() <= 0) return result;
  for (const auto& [sq, mult] : squarefree_decompose(f)) {
    // Clear denominators to a primitive integer polynomial.
    Integer den(1);
    for (const auto& c : sq.coeffs()) {
      Rational q;
      as_rational(c, q);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    }
    zx::ZPoly P;
    for (const auto& c : sq.coeffs()) {
      Rational q;
      as_rational(c, q);
      Rational scaled = q * Rational(den);
      P.push_back(scaled.get_num());
    }
    P = detail::primitive_part(P);
    for (const auto& fac : detail::factor_squarefree_z(P)) {
      VPoly vc;
      Rational lc(fac.back());
      for (const auto& c : fac) vc.emplace_back(Rational(c) / lc);
      result.emplace_back(UniPoly(f.var(), std::move(vc)), mult);
    }
  }
  std::sort(result.begin(), result.end(),
            [](const std::pair<UniPoly, int>& a, const std::pair<UniPoly, int>& b) {
              if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
              for (int i = 0; i <= a.first.deg(); ++i) {
                int c = FieldElem::compare(a.first.coeff(i), b.first.coeff(i));
                if (c != 0) return c < 0;
              }
              return a.second < b.second;
            });
  return result;
}

// Result of isolating the zero set of a univariate polynomial over a tower
// level: roots visible in the tower (with multiplicity) plus residual monic
// squarefree factors of degree ≥ 2 whose roots form conjugate clusters.
// A cluster is certified when adjoining it yields a genuine field (it is
// irreducible over ℚ and the base tower is trivial); uncertified clusters
// rely on zero-divisor detection downstream.
struct RootSplit {
  struct Cluster {
    UniPoly poly;
    int mult;
    bool certified_irreducible;
  };
  std::vector<std::pair<FieldElem, int>> roots;
  std::vector<Cluster> clusters;
};

inline RootSplit root_split(const UniPoly& f, const TowerPtr& t) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root isolation of the zero polynomial");
  RootSplit out;
  if (f.deg() == 0) return out;
  UniPoly g(f.var(), [&] {
    VPoly c = f.coeffs();
    for (auto& e : c)
      if (e.tower() != t) e = e.promoted(t);
    return c;
  }());
  // Candidate roots already present in the tower: the adjoined generators,
  // plus zero (so a cluster polynomial never vanishes at the origin).
  std::vector<FieldElem> candidates;
  for (TowerPtr lvl = t; lvl; lvl = lvl->parent())
    candidates.push_back(FieldElem::generator(lvl).promoted(t));
  candidates.push_back(FieldElem(0));

  auto peel = [&](UniPoly cur, int mult, bool certifiable) {
    while (true) {
      if (cur.deg() <= 0) return;
      if (cur.deg() == 1) {
        out.roots.emplace_back(-(cur.coeff(0) / cur.coeff(1)), mult);
        return;
      }
      bool found = false;
      for (const auto& r : candidates) {
        if (cur.eval(r).test_zero()) {
          UniPoly lin(cur.var(), VPoly{-r, FieldElem(1)});
          cur = cur.exact_div(lin);
          out.roots.emplace_back(r, mult);
          found = true;
          break;
        }
      }
      if (!found) {
        // Peeling a root would have destroyed ℚ-irreducibility anyway, so
        // reaching here with `certifiable` means the factor is untouched.
        out.clusters.push_back({cur.monic(), mult, certifiable && !t});
        return;
      }
    }
  };

  for (const auto& [sq, mult] : squarefree_decompose(g)) {
    bool rational_coeffs = true;
    for (const auto& c : sq.coeffs()) {
      Rational q;
      if (!as_rational(c, q)) {
        rational_coeffs = false;
        break;
      }
    }
    if (rational_coeffs) {
      // Factor over ℚ first, then peel tower roots factor by factor.
      VPoly qc;
      for (const auto& c : sq.coeffs()) {
        Rational q;
        as_rational(c, q);
        qc.emplace_back(q);
      }
      for (const auto& [irr, m2] : uni_factor_rational(UniPoly(sq.var(), qc))) {
        (void)m2;  // squarefree input: always 1
        VPoly lifted;
        for (const auto& c : irr.coeffs()) lifted.push_back(c.promoted(t));
        peel(UniPoly(sq.var(), std::move(lifted)), mult, /*certifiable=*/true);
      }
    } else {
      peel(sq, mult, /*certifiable=*/false);
    }
  }
  return out;
}

}  // namespace curvelog
