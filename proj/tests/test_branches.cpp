#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "curvelog/branches.hpp"
#include "curvelog/germ.hpp"
#include "curvelog/logideals.hpp"
#include "curvelog/resolution.hpp"

using namespace curvelog;

namespace {
BiPoly X(int i = 1) { return BiPoly::x(i); }
BiPoly Y(int j = 1) { return BiPoly::y(j); }
BiPoly C(long n) { return BiPoly(FieldElem(n)); }

bool code_is(const Error& e, ErrorCode c) { return e.code() == c; }

// True when the series is exact and equals the polynomial with the given
// rational coefficients (index = exponent of t).
bool exact_poly(const TSeries& s, const std::vector<long>& coeffs) {
  if (!s.is_exact()) return false;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    FieldElem d = s.coeff(static_cast<int>(k)) - FieldElem(coeffs[k]);
    if (!d.is_zero()) return false;
  }
  for (int k = static_cast<int>(coeffs.size()); k <= s.poly().deg(); ++k)
    if (!s.coeff(k).is_zero()) return false;
  return true;
}

long tower_degree(const TowerPtr& t) { return t ? t->absolute_degree() : 1; }

// Order of x along the branch; the covering degree for non-axis branches.
long x_order(BranchParam& b) {
  auto k = pullback_order(b, X());
  return k ? *k : -1;  // -1 encodes "x vanishes identically"
}

std::vector<long> sorted_x_orders(std::vector<BranchParam>& bs) {
  std::vector<long> v;
  for (auto& b : bs) v.push_back(x_order(b));
  std::sort(v.begin(), v.end());
  return v;
}

IdealBasis monomial_ideal(std::vector<BiPoly> gens) {
  return buchberger(gens, MonomialOrder::lex_yx());
}

std::string render(const BranchParam& b) {
  return b.x.to_string() + " | " + b.y.to_string() + " | ram=" + std::to_string(b.ram) +
         " conj=" + std::to_string(b.conj);
}
}  // namespace

TEST_CASE("product of two graphs splits into its exact graph branches", "[branches]") {
  // (y + x^2)(y + x^3): both branches are polynomial graphs, so the
  // parametrizations must come back exact (no truncation tail).
  BiPoly F = (Y() + X(2)) * (Y() + X(3));
  std::vector<BranchParam> bs = puiseux(F);
  REQUIRE(bs.size() == 2);

  // Order within the list is deterministic but not pinned; find by y-order.
  auto* b2 = &bs[0];
  auto* b3 = &bs[1];
  if (pullback_order(*b2, Y()) != std::optional<long>(2)) std::swap(b2, b3);

  CHECK(exact_poly(b2->x, {0, 1}));      // x = t
  CHECK(exact_poly(b2->y, {0, 0, -1}));  // y = -t^2
  CHECK(b2->ram == 1);
  CHECK(b2->conj == 1);

  CHECK(exact_poly(b3->x, {0, 1}));         // x = t
  CHECK(exact_poly(b3->y, {0, 0, 0, -1}));  // y = -t^3
  CHECK(b3->ram == 1);
  CHECK(b3->conj == 1);
}

TEST_CASE("boundary-tangent cusp is parametrized by an exact monomial pair", "[branches]") {
  // y^3 + x^2 has one branch; after normalizing the leading unit the
  // parametrization is exactly (t^3, -t^2).
  std::vector<BranchParam> bs = puiseux(Y(3) + X(2));
  REQUIRE(bs.size() == 1);
  BranchParam& b = bs[0];
  CHECK(exact_poly(b.x, {0, 0, 0, 1}));   // x = t^3
  CHECK(exact_poly(b.y, {0, 0, -1}));     // y = -t^2
  CHECK(b.ram == 3);
  CHECK(b.conj == 1);
  CHECK(b.tower == nullptr);
}

TEST_CASE("cusp branch has ramification two and certified residual", "[branches]") {
  BiPoly F = Y(2) + X(3);
  std::vector<BranchParam> bs = puiseux(F, 20);
  REQUIRE(bs.size() == 1);
  BranchParam& b = bs[0];
  CHECK(pullback_order(b, X()) == std::optional<long>(2));
  CHECK(pullback_order(b, Y()) == std::optional<long>(3));
  CHECK(b.conj == 1);

  // Substituting the parametrization back into F must vanish identically to
  // the working precision: no nonzero coefficient is certified anywhere.
  TSeries r = substitute(F, b.x, b.y);
  CHECK(!r.certified_order().has_value());
  CHECK((r.is_exact() || r.prec() >= 20));
}

TEST_CASE("pullback orders along the branches of a boundary-tangent germ", "[branches]") {
  // F = (y + x^3)(y^3 + x^2): a graph branch and a singular branch.
  BiPoly F = (Y() + X(3)) * (Y(3) + X(2));
  BiPoly Fx = F.partial('x');
  BiPoly Fy = F.partial('y');
  std::vector<BranchParam> bs = puiseux(F);
  REQUIRE(bs.size() == 2);

  auto* sing = &bs[0];
  auto* graph = &bs[1];
  if (x_order(*sing) != 3) std::swap(sing, graph);
  REQUIRE(x_order(*sing) == 3);
  REQUIRE(x_order(*graph) == 1);

  // The singular branch is (t^3, -t^2) exactly, even inside the product.
  CHECK(exact_poly(sing->x, {0, 0, 0, 1}));
  CHECK(exact_poly(sing->y, {0, 0, -1}));

  CHECK(pullback_order(*sing, Fx) == std::optional<long>(5));
  CHECK(pullback_order(*sing, Fy) == std::optional<long>(6));
  CHECK(pullback_order(*graph, Fy) == std::optional<long>(2));

  // F itself vanishes on every branch: the pullback order is infinite.
  CHECK(!pullback_order(*sing, F).has_value());
  CHECK(!pullback_order(*graph, F).has_value());

  // Pulling back the zero polynomial is infinite as well.
  CHECK(!pullback_order(*sing, BiPoly()).has_value());
}

TEST_CASE("vertical line component becomes an exact axis branch", "[branches]") {
  // x(y + x)(y + x^2): the line x = 0 plus two graphs.
  BiPoly F = X() * (Y() + X()) * (Y() + X(2));
  std::vector<BranchParam> bs = puiseux(F);
  REQUIRE(bs.size() == 3);

  int vertical = -1;
  for (std::size_t i = 0; i < bs.size(); ++i)
    if (bs[i].x.known_zero()) vertical = static_cast<int>(i);
  REQUIRE(vertical >= 0);
  BranchParam& v = bs[static_cast<std::size_t>(vertical)];
  CHECK(v.axis);
  CHECK(exact_poly(v.y, {0, 1}));  // y = t
  CHECK(v.ram == 1);
  CHECK(v.conj == 1);
  CHECK(pullback_order(v, Y()) == std::optional<long>(1));

  std::vector<long> yords;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (static_cast<int>(i) == vertical) continue;
    auto k = pullback_order(bs[i], Y());
    REQUIRE(k.has_value());
    yords.push_back(*k);
    CHECK(bs[i].x.is_exact());
    CHECK(bs[i].y.is_exact());
  }
  std::sort(yords.begin(), yords.end());
  CHECK(yords == std::vector<long>{1, 2});
}

TEST_CASE("coordinate-axes node yields the two axis branches", "[branches]") {
  std::vector<BranchParam> bs = puiseux(X() * Y());
  REQUIRE(bs.size() == 2);
  int vert = bs[0].x.known_zero() ? 0 : 1;
  BranchParam& v = bs[static_cast<std::size_t>(vert)];
  BranchParam& h = bs[static_cast<std::size_t>(1 - vert)];
  REQUIRE(v.x.known_zero());
  CHECK(exact_poly(v.y, {0, 1}));
  REQUIRE(h.y.known_zero());
  CHECK(exact_poly(h.x, {0, 1}));
  CHECK((v.axis && h.axis));
}

TEST_CASE("conjugate pair of graphs merges into one branch of degree two", "[branches]") {
  // y^2 + x^6 = (y - i x^3)(y + i x^3): one branch carrying a degree-two
  // coefficient extension, not two separate branches.
  BiPoly F = Y(2) + X(6);
  std::vector<BranchParam> bs = puiseux(F);
  REQUIRE(bs.size() == 1);
  BranchParam& b = bs[0];
  CHECK(b.conj == 2);
  CHECK(b.ram == 1);
  CHECK(tower_degree(b.tower) == 2);
  CHECK(b.y.is_exact());
  CHECK(pullback_order(b, X()) == std::optional<long>(1));
  CHECK(pullback_order(b, Y()) == std::optional<long>(3));

  TSeries r = substitute(F, b.x, b.y);
  CHECK(!r.certified_order().has_value());
}

TEST_CASE("valuation ideal from polar pullback orders matches frozen examples", "[branches]") {
  // Two-branch boundary-tangent germ: colength four.
  BiPoly F = (Y() + X(3)) * (Y(3) + X(2));
  IdealBasis ec = ideal_ec(F);
  CHECK(ideal_compare(ec, monomial_ideal({X(2), X() * Y(), Y(3)})) == IdealRel::Equal);
  CHECK(colength(ec) == std::optional<long>(4));

  // Node: the maximal ideal.
  CHECK(ideal_compare(ideal_ec(X() * Y()), monomial_ideal({X(), Y()})) == IdealRel::Equal);

  // Smooth branch: the unit ideal.
  CurveGerm smooth = normalize(Y() + X(2));
  IdealBasis unit = ideal_ec(smooth);
  CHECK(colength(unit) == std::optional<long>(0));

  // Two conjugate smooth branches tangent to each other (coefficient 1):
  // the valuation conditions cut out <y, x^2>.
  BiPoly tac = Y(2) + X(2) * Y() + X(4);
  CHECK(ideal_compare(ideal_ec(tac), monomial_ideal({Y(), X(2)})) == IdealRel::Equal);
  CHECK(colength(ideal_ec(tac)) == std::optional<long>(2));
}

TEST_CASE("conductor-bound valuation ideal matches frozen examples", "[branches]") {
  // Cusp: colength one.
  IdealBasis cusp = ideal_cd(Y(2) + X(3));
  CHECK(ideal_compare(cusp, monomial_ideal({X(), Y()})) == IdealRel::Equal);
  CHECK(colength(cusp) == std::optional<long>(1));

  // Node: the maximal ideal again.
  CHECK(ideal_compare(ideal_cd(X() * Y()), monomial_ideal({X(), Y()})) == IdealRel::Equal);

  // Two graphs tangent of order two: colength two.
  BiPoly F35 = (Y() + X(2)) * (Y() + X(3));
  IdealBasis cd35 = ideal_cd(F35);
  CHECK(ideal_compare(cd35, monomial_ideal({Y(), X(2)})) == IdealRel::Equal);
  CHECK(colength(cd35) == std::optional<long>(2));

  // Boundary-tangent two-branch germ: colength three.
  BiPoly F5 = (Y() + X(3)) * (Y(3) + X(2));
  IdealBasis cd5 = ideal_cd(F5);
  CHECK(ideal_compare(cd5, monomial_ideal({X(2), X() * Y(), Y(2)})) == IdealRel::Equal);
  CHECK(colength(cd5) == std::optional<long>(3));

  // Smooth: unit ideal.
  CHECK(colength(ideal_cd(Y() + X(2))) == std::optional<long>(0));
}

TEST_CASE("branch-counted double points match frozen values", "[branches]") {
  CHECK(delta_branch(Y() + X(2)) == 0);                           // smooth
  CHECK(delta_branch(X() * Y()) == 1);                            // node
  CHECK(delta_branch(Y(2) + X(3)) == 1);                          // cusp
  CHECK(delta_branch((Y() + X(2)) * (Y() + X(3))) == 2);          // tangent graphs
  CHECK(delta_branch(Y(2) + X(2) * Y() + X(4)) == 2);             // conjugate tangent pair
  CHECK(delta_branch(Y(2) + X(5)) == 2);                          // ramified, one branch
  CHECK(delta_branch(Y(2) + X(6)) == 3);                          // conjugate pair, contact 3
  CHECK(delta_branch(X() * (Y() + X()) * (Y() + X(2))) == 3);     // line + two graphs
  CHECK(delta_branch((Y() + X(3)) * (Y(3) + X(2))) == 3);         // graph + singular branch
}

TEST_CASE("family coefficient split yields the branches of every member", "[branches]") {
  // Coefficient u from the non-irreducible extension u^2 - 3u + 2 = 0
  // ((u-1)(u-2)): member u = 1 is the cusp y^2 + x^3 (one branch of
  // covering degree two), member u = 2 adds the term xy and splits into two
  // graph-like branches.  The family answer is the concatenation.
  TowerPtr junk = Tower::extend(nullptr, {FieldElem(2), FieldElem(-3), FieldElem(1)}, "u", false);
  FieldElem u = FieldElem::generator(junk);
  BiPoly F = Y(2) + BiPoly(u - FieldElem(1)) * X() * Y() + X(3);

  std::vector<BranchParam> bs = puiseux(F);
  REQUIRE(bs.size() == 3);
  for (auto& b : bs) CHECK(b.conj == 1);
  CHECK(sorted_x_orders(bs) == std::vector<long>{1, 1, 2});
}

TEST_CASE("inclusion chain collapses for the cusp with transversal boundary", "[branches]") {
  CurveGerm g = normalize(Y(3) + X(2));  // w = 2
  ChainReport r = inclusion_chain_check(g);
  REQUIRE(r.links.size() == 3);
  for (const auto& link : r.links) {
    INFO(link.name);
    CHECK(link.holds);
    CHECK(!link.witness.has_value());
  }
  CHECK(r.sandwich_holds);
  CHECK(r.all_pass);

  // For this germ the first two ideals in the chain coincide.
  CHECK(ideal_compare(ideal_ea(g), ideal_ec(g)) == IdealRel::Equal);
}

TEST_CASE("inclusion chain is strict at the first link for a tangent germ", "[branches]") {
  CurveGerm g = normalize((Y() + X(3)) * (Y(3) + X(2)));  // w = 5
  ChainReport r = inclusion_chain_check(g);
  REQUIRE(r.links.size() == 3);
  for (const auto& link : r.links) {
    INFO(link.name);
    CHECK(link.holds);
  }
  CHECK(r.all_pass);

  IdealBasis ea = ideal_ea(g);
  IdealBasis ealog = ideal_ea_log(g, LogRoute::ClosedForm);
  IdealBasis ec = ideal_ec(g);
  CHECK(ideal_compare(ea, ealog) == IdealRel::LeftInRight);  // strict
  CHECK(ideal_compare(ealog, ec) == IdealRel::Equal);

  CHECK(r.tau_log == 4);
  CHECK(r.tes_log == 4);
  CHECK(r.tau_ec == 4);
  CHECK(r.sandwich_holds);
}

TEST_CASE("branch data is deterministic across repeated runs", "[branches]") {
  BiPoly F = X() * (Y() + X()) * (Y() + X(2));
  std::vector<BranchParam> a = puiseux(F, 6);
  std::vector<BranchParam> b = puiseux(F, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(render(a[i]) == render(b[i]));
}

TEST_CASE("invalid branch inputs are rejected", "[branches]") {
  CHECK_THROWS_MATCHES(puiseux(BiPoly()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, ErrorCode::ZeroPolynomial);
                       }));
  CHECK_THROWS_MATCHES(puiseux(Y() + C(1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, ErrorCode::NotThroughOrigin);
                       }));
  CHECK_THROWS_MATCHES(puiseux((Y() + X(2)) * (Y() + X(2))), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, ErrorCode::NonReducedInput);
                       }));
}

TEST_CASE("precision requests beyond the hard cap are refused", "[branches]") {
  CHECK_THROWS_MATCHES(puiseux(Y(2) + X(3), 600), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, ErrorCode::TruncationCapExceeded);
                       }));
}

TEST_CASE("corpus: branch bookkeeping matches boundary order, intersections, and blow-ups",
          "[branches][corpus]") {
  std::vector<BiPoly> polys = corpus::corpus_polynomials();
  int checked = 0;
  for (std::size_t idx = 0; idx < polys.size(); ++idx) {
    const BiPoly& F = polys[idx];
    CurveGerm g;
    try {
      g = normalize(F);
    } catch (const Error&) {
      continue;  // not a valid germ relative to the boundary line
    }
    INFO("germ #" << idx << ": " << F.to_string());

    std::vector<BranchParam> bs = puiseux(g);
    REQUIRE(!bs.empty());

    // Every branch substitutes back to a residual with no certified
    // nonzero coefficient.
    for (auto& b : bs) {
      TSeries r = substitute(F, b.x, b.y);
      CHECK(!r.certified_order().has_value());
    }

    // Conjugacy-weighted boundary contact equals the boundary order w.
    long wsum = 0;
    for (auto& b : bs) {
      auto k = pullback_order(b, Y());
      REQUIRE(k.has_value());
      wsum += b.conj * *k;
    }
    CHECK(wsum == g.w);

    // Conjugacy-weighted pullback orders of a transversal polynomial agree
    // with the local intersection multiplicity computed by elimination.
    BiPoly Fy = F.partial('y');
    std::optional<long> im = intersection_multiplicity(F, Fy);
    long psum = 0;
    bool infinite = false;
    for (auto& b : bs) {
      auto k = pullback_order(b, Fy);
      if (!k) infinite = true;
      else psum += b.conj * *k;
    }
    if (infinite) {
      CHECK(!im.has_value());
    } else {
      REQUIRE(im.has_value());
      CHECK(psum == *im);
    }

    // The three routes to the double-point count agree.
    long db = delta_branch(g);
    CHECK(db == delta_res(F));
    CHECK(colength(ideal_cd(g)) == std::optional<long>(db));

    // Spot-check the full inclusion chain on a sample of the corpus.
    if (idx < 15 || idx % 7 == 0) {
      ChainReport r = inclusion_chain_check(g);
      for (const auto& link : r.links) {
        INFO("chain link: " << link.name);
        CHECK(link.holds);
      }
      CHECK(r.tau_log >= r.tes_log);
      CHECK(r.tes_log >= r.tau_ec);
    }
    ++checked;
  }
  CHECK(checked >= 50);
}
