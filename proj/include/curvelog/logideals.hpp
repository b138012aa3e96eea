#pragma once
// The deformation-theoretic ideals of a curve germ relative to the boundary
// divisor D = V(y) and the point P = origin, their colengths, the
// cross-checked colength identities, and the semiuniversal families.
//
// Every ideal constructor returns the origin-primary component of the ideal
// it names: polynomial representatives of analytic germs can pick up
// far-away zeros (even catalog-style inputs produce elements like x²·(x−1)
// whose second factor is a unit at the origin), and all colengths in scope
// are local.  Localization caps the generators with ⟨x^N, y^N⟩ and doubles N
// until the colength drops below N, which pins the exact local ideal.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelog/bipoly.hpp"
#include "curvelog/errors.hpp"
#include "curvelog/germ.hpp"
#include "curvelog/groebner.hpp"

namespace curvelog {

inline constexpr int kMaxLocalizationCap = 4096;

// Origin-primary component of ⟨gens⟩, as a reduced Gröbner basis.
inline IdealBasis local_ideal(const std::vector<BiPoly>& gens,
                              MonomialOrder order = MonomialOrder::lex_yx()) {
  bool all_zero = true;
  for (const BiPoly& g : gens)
    if (!g.is_zero()) all_zero = false;
  if (gens.empty() || all_zero)
    throw Error(ErrorCode::Internal, "cannot localize the zero ideal at the origin");
  for (int n = 2; n <= kMaxLocalizationCap; n *= 2) {
    std::vector<BiPoly> capped = gens;
    capped.push_back(BiPoly::x(n));
    capped.push_back(BiPoly::y(n));
    IdealBasis b = buchberger(capped, order);
    auto c = colength(b);
    if (!c) throw Error(ErrorCode::Internal, "capped ideal must have finite colength");
    if (*c < n) return b;
  }
  throw Error(ErrorCode::Internal, "localization cap exceeded: ideal has huge or infinite local colength");
}

// Local Tjurina ideal ⟨∂x F, ∂y F, F⟩ of an arbitrary reduced polynomial.
inline IdealBasis tjurina_local(const BiPoly& F) {
  return local_ideal({F.partial('x'), F.partial('y'), F});
}

inline IdealBasis ideal_ea(const CurveGerm& g) { return tjurina_local(g.F); }

// ⟨x, y⟩·⟨∂x F, ∂y F⟩ + ⟨F⟩: deformations fixing the point.
inline IdealBasis ideal_ea_fix(const CurveGerm& g) {
  BiPoly fx = g.F.partial('x'), fy = g.F.partial('y');
  return local_ideal({BiPoly::x() * fx, BiPoly::y() * fx, BiPoly::x() * fy,
                      BiPoly::y() * fy, g.F});
}

// Deformations preserving the boundary divisor (fix_point=false) or the
// boundary divisor together with the marked point (fix_point=true).
inline IdealBasis ideal_ea_rel(const CurveGerm& g, bool fix_point) {
  BiPoly fx = g.F.partial('x'), fy = g.F.partial('y');
  if (fix_point)
    return local_ideal({BiPoly::x() * fx, BiPoly::y() * fx, BiPoly::y() * fy, g.F});
  return local_ideal({fx, BiPoly::y() * fy, g.F});
}

enum class LogRoute { Colon, ClosedForm };

// Logarithmic deformation ideal.  Colon route: (relative-with-point ideal) : y.
// Closed-form route: ⟨∂x F, ∂y F, w·f·u − x·u·∂x f + x·f·∂x u⟩, the
// u²-cleared polynomial form of w·(f/u) − x·∂x(f/u).
inline IdealBasis ideal_ea_log(const CurveGerm& g, LogRoute route) {
  if (route == LogRoute::Colon)
    return colon_principal(ideal_ea_rel(g, true), BiPoly::y(), 1);
  BiPoly u = BiPoly::from_x_poly(g.u);
  BiPoly du = BiPoly::from_x_poly(g.u.derivative());
  BiPoly third = BiPoly(FieldElem(static_cast<long>(g.w))) * g.f * u -
                 BiPoly::x() * u * g.f.partial('x') + BiPoly::x() * g.f * du;
  return local_ideal({g.F.partial('x'), g.F.partial('y'), third});
}

struct InvariantReport {
  int w = 0;
  long tau = 0;         // colength of the Tjurina ideal
  long tau_fix = 0;     // point-fixing
  long tau_rel_D = 0;   // boundary-preserving
  long tau_rel_DP = 0;  // boundary- and point-preserving
  long tau_log = 0;     // logarithmic
  long tau_cup = 0;     // Tjurina number of curve ∪ boundary
  std::optional<long> delta;    // filled by the resolution pipeline
  std::optional<long> tes_cup;  // equisingular Tjurina of curve ∪ boundary
  std::optional<long> tes_log;  // logarithmic equisingular Tjurina
  IdealBasis ea, ea_fix, rel_D, rel_DP, ea_log;
  std::optional<IdealBasis> ec, cd;  // valuation and conductor-type ideals
};

namespace detail {
inline long finite_colength(const IdealBasis& b, const char* what) {
  auto c = colength(b);
  if (!c) throw Error(ErrorCode::IdentityViolation, std::string(what) + " has infinite colength");
  return *c;
}
inline bool same_basis(const IdealBasis& a, const IdealBasis& b) {
  if (a.gens.size() != b.gens.size()) return false;
  for (std::size_t i = 0; i < a.gens.size(); ++i)
    if (BiPoly::compare(a.gens[i], b.gens[i]) != 0) return false;
  return true;
}
}  // namespace detail

// Computes every colength independently and asserts the exact identities
//   tau_log = tau_rel_DP − w = tau_rel_D − (w−1) = tau_cup − (2w−1)
// plus agreement of the two logarithmic-ideal routes.
inline InvariantReport tau_report(const CurveGerm& g) {
  InvariantReport r;
  r.w = g.w;
  r.ea = ideal_ea(g);
  r.ea_fix = ideal_ea_fix(g);
  r.rel_D = ideal_ea_rel(g, false);
  r.rel_DP = ideal_ea_rel(g, true);
  r.ea_log = ideal_ea_log(g, LogRoute::ClosedForm);
  IdealBasis log_colon = ideal_ea_log(g, LogRoute::Colon);
  if (!detail::same_basis(r.ea_log, log_colon))
    throw Error(ErrorCode::IdentityViolation,
                "logarithmic ideal: colon route and closed-form route disagree");
  r.tau = detail::finite_colength(r.ea, "Tjurina ideal");
  r.tau_fix = detail::finite_colength(r.ea_fix, "point-fixing ideal");
  r.tau_rel_D = detail::finite_colength(r.rel_D, "boundary-preserving ideal");
  r.tau_rel_DP = detail::finite_colength(r.rel_DP, "boundary-and-point ideal");
  r.tau_log = detail::finite_colength(r.ea_log, "logarithmic ideal");
  r.tau_cup = detail::finite_colength(tjurina_local(BiPoly::y() * g.F), "union Tjurina ideal");
  if (r.tau_log != r.tau_rel_DP - r.w)
    throw Error(ErrorCode::IdentityViolation, "tau_log != tau_rel_DP - w");
  if (r.tau_log != r.tau_rel_D - (r.w - 1))
    throw Error(ErrorCode::IdentityViolation, "tau_log != tau_rel_D - (w-1)");
  if (r.tau_log != r.tau_cup - (2 * r.w - 1))
    throw Error(ErrorCode::IdentityViolation, "tau_log != tau_cup - (2w-1)");
  return r;
}

enum class FamilyFlavor { Log, Absolute };

struct DeformationFamily {
  long k = 0;                         // base dimension
  std::vector<BiPoly> basis;          // standard monomials, ascending
  std::vector<BiPoly> perturbations;  // summand attached to each parameter
  std::vector<std::string> params;    // "t1" … "tk"
  std::string family_text;
};

namespace detail {
inline std::string param_term(const std::string& name, const BiPoly& mono) {
  if (mono.total_degree() == 0) return name;
  return name + "*" + mono.to_string();
}
}  // namespace detail

// Semiuniversal deformation family over the governing ideal's standard
// monomials.  Log flavor with u = 1 is emitted in the product shape
// y*(f + Σ tᵢ·mᵢ) + x^w; otherwise the additive shape F + Σ tᵢ·(pert)ᵢ.
inline DeformationFamily semiuniversal_family(const CurveGerm& g, FamilyFlavor flavor) {
  DeformationFamily fam;
  IdealBasis gov = flavor == FamilyFlavor::Log ? ideal_ea_log(g, LogRoute::ClosedForm)
                                               : ideal_ea(g);
  std::vector<Mono> monos = monomial_basis(gov);
  fam.k = static_cast<long>(monos.size());
  for (const Mono& m : monos) fam.basis.push_back(BiPoly::term(m.i, m.j));

  bool unit_is_one = g.u.deg() == 0 && FieldElem::compare(g.u.coeff(0), FieldElem(1)) == 0;
  std::vector<std::string> terms;
  for (long i = 0; i < fam.k; ++i) {
    fam.params.push_back("t" + std::to_string(i + 1));
    const BiPoly& mono = fam.basis[static_cast<std::size_t>(fam.k - 1 - i)];
    fam.perturbations.push_back(flavor == FamilyFlavor::Log ? BiPoly::y() * mono : mono);
    terms.push_back(detail::param_term(fam.params.back(), mono));
  }

  std::string sum;
  for (const std::string& t : terms) sum += " + " + t;
  if (flavor == FamilyFlavor::Log && unit_is_one) {
    std::string inner = g.f.is_zero() ? (terms.empty() ? "0" : sum.substr(3))
                                      : g.f.to_string() + sum;
    fam.family_text = "y*(" + inner + ") + " + BiPoly::x(g.w).to_string();
  } else {
    fam.family_text = g.F.to_string();
    for (long i = 0; i < fam.k; ++i)
      fam.family_text += " + " + detail::param_term(fam.params[static_cast<std::size_t>(i)],
                                                    fam.perturbations[static_cast<std::size_t>(i)]);
  }
  return fam;
}

}  // namespace curvelog
