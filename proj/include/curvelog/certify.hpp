#pragma once
// Certification of a candidate equisingular ideal by colength sandwiching.
//
// The equisingular ideal itself is not computed in general; what can be
// certified exactly is the chain position of a stated candidate J:
//
//     closed-form ideal  ⊆  J  ⊆  valuation ideal,    colength(J) = tes_log.
//
// When both containments hold and the colength matches, the candidate is a
// correct equisingular ideal provided one exists in that chain with that
// colength; if moreover tau_log == tes_log the containment from the left has
// equal finite colength on both sides, which forces J to equal the
// closed-form ideal — equality is then certified outright.

#include <vector>

#include "curvelog/branches.hpp"
#include "curvelog/resolution.hpp"

namespace curvelog {

enum class CertifyVerdict { CertifiedEqual, CertifiedSandwich, Refuted };

inline const char* to_string(CertifyVerdict v) {
  switch (v) {
    case CertifyVerdict::CertifiedEqual: return "certified_equal";
    case CertifyVerdict::CertifiedSandwich: return "certified_sandwich";
    case CertifyVerdict::Refuted: return "refuted";
  }
  return "unknown";
}

inline CertifyVerdict certify_es_log(const CurveGerm& g, const std::vector<BiPoly>& candidate) {
  IdealBasis cand = buchberger(candidate, MonomialOrder::lex_yx());
  IdealBasis ea_log = ideal_ea_log(g, LogRoute::ClosedForm);
  IdealBasis ec = ideal_ec(g);

  IdealRel below = ideal_compare(ea_log, cand);
  if (below != IdealRel::Equal && below != IdealRel::LeftInRight) return CertifyVerdict::Refuted;
  IdealRel above = ideal_compare(cand, ec);
  if (above != IdealRel::Equal && above != IdealRel::LeftInRight) return CertifyVerdict::Refuted;

  std::optional<long> cl = colength(cand);
  if (!cl || *cl != tes_log(g)) return CertifyVerdict::Refuted;

  std::optional<long> tl = colength(ea_log);
  if (tl && *tl == *cl) return CertifyVerdict::CertifiedEqual;
  return CertifyVerdict::CertifiedSandwich;
}

}  // namespace curvelog
