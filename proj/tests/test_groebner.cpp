#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "curvelog/groebner.hpp"

using namespace curvelog;

namespace {

BiPoly X(int i = 1) { return BiPoly::x(i); }
BiPoly Y(int j = 1) { return BiPoly::y(j); }
BiPoly C(long n) { return BiPoly(FieldElem(n)); }
BiPoly Cq(long n, long d) { return BiPoly(FieldElem(rational_of(n, d))); }

bool same_polys(const std::vector<BiPoly>& a, const std::vector<BiPoly>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (BiPoly::compare(a[i], b[i]) != 0) return false;
  return true;
}

BiPoly random_poly(std::mt19937_64& rng, int max_deg) {
  BiPoly p;
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    int i = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
    int j = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1 - i));
    long c = static_cast<long>(rng() % 7) - 3;
    if (c != 0) p.add_term({i, j}, FieldElem(c));
  }
  return p;
}

}  // namespace

TEST_CASE("reduced basis of a monomial-plus-variable pair", "[groebner]") {
  IdealBasis g = buchberger({Y(2), X()}, MonomialOrder::lex_xy());
  REQUIRE(g.groebner);
  REQUIRE(g.gens.size() == 2);
  CHECK(BiPoly::compare(g.gens[0], X()) == 0);
  CHECK(BiPoly::compare(g.gens[1], Y(2)) == 0);
}

TEST_CASE("reduced basis collapses redundant tangent-ideal generators", "[groebner]") {
  // closed-form generator set for y^2 + x^2 y + x^4 relative to the boundary:
  // {2xy + 4x^3, 2y + x^2, 4y + 2x^2}
  BiPoly g1 = C(2) * X() * Y() + C(4) * X(3);
  BiPoly g2 = C(2) * Y() + X(2);
  BiPoly g3 = C(4) * Y() + C(2) * X(2);
  IdealBasis g = buchberger({g1, g2, g3}, MonomialOrder::lex_yx());
  REQUIRE(g.gens.size() == 2);
  CHECK(BiPoly::compare(g.gens[0], Y() + Cq(1, 2) * X(2)) == 0);
  CHECK(BiPoly::compare(g.gens[1], X(3)) == 0);
  CHECK(colength(g).value() == 3);
}

TEST_CASE("a trinomial generator set already generates its leading ideal", "[groebner]") {
  // exponents (5, 3, 2, 1): {5x^4 + 3x^2 y, x^3, y}
  std::vector<BiPoly> gens = {C(5) * X(4) + C(3) * X(2) * Y(), X(3), Y()};
  CHECK(is_groebner_basis(gens, MonomialOrder::lex_xy()));
  IdealBasis g = buchberger(gens, MonomialOrder::lex_xy());
  REQUIRE(g.gens.size() == 2);
  CHECK(BiPoly::compare(g.gens[0], X(3)) == 0);
  CHECK(BiPoly::compare(g.gens[1], Y()) == 0);

  // a set that is not a basis of its leading ideal
  CHECK_FALSE(is_groebner_basis({Y() + X(2), X() * Y()}, MonomialOrder::lex_yx()));
}

TEST_CASE("colength counts standard monomials", "[groebner]") {
  CHECK(colength(buchberger({X(), Y()}, MonomialOrder::lex_yx())).value() == 1);
  CHECK(colength(buchberger({Y(2), X()}, MonomialOrder::lex_yx())).value() == 2);
  CHECK(colength(buchberger({X(2), X() * Y(), Y(3)}, MonomialOrder::lex_yx())).value() == 4);
  CHECK(colength(buchberger({C(1)}, MonomialOrder::lex_yx())).value() == 0);

  CHECK_FALSE(colength(buchberger({X()}, MonomialOrder::lex_yx())).has_value());
  CHECK_FALSE(colength(buchberger({}, MonomialOrder::lex_yx())).has_value());
}

TEST_CASE("standard monomial bases", "[groebner]") {
  auto basis = monomial_basis(buchberger({X(), Y(2)}, MonomialOrder::lex_yx()));
  REQUIRE(basis.size() == 2);
  CHECK((basis[0].i == 0 && basis[0].j == 0));
  CHECK((basis[1].i == 0 && basis[1].j == 1));

  basis = monomial_basis(buchberger({X(), Y()}, MonomialOrder::lex_yx()));
  REQUIRE(basis.size() == 1);
  CHECK((basis[0].i == 0 && basis[0].j == 0));

  basis = monomial_basis(buchberger({X(2), X() * Y(), Y(2)}, MonomialOrder::lex_yx()));
  REQUIRE(basis.size() == 3);
  CHECK((basis[0].i == 0 && basis[0].j == 0));
  CHECK((basis[1].i == 1 && basis[1].j == 0));
  CHECK((basis[2].i == 0 && basis[2].j == 1));

  CHECK_THROWS_MATCHES(
      monomial_basis(buchberger({Y()}, MonomialOrder::lex_yx())), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.code() == ErrorCode::InfiniteColength; }));
}

TEST_CASE("colon by a principal ideal", "[groebner]") {
  IdealBasis xy = buchberger({X(), Y()}, MonomialOrder::lex_yx());

  SECTION("monomial ideal divided by y") {
    IdealBasis q = colon_principal(buchberger({X() * Y(), Y(2)}, MonomialOrder::lex_yx()), Y(), 1);
    CHECK(ideal_compare(q, xy) == IdealRel::Equal);
    REQUIRE(q.gens.size() == 2);
    CHECK(BiPoly::compare(q.gens[0], Y()) == 0);
    CHECK(BiPoly::compare(q.gens[1], X()) == 0);
  }

  SECTION("square of the maximal ideal divided by y") {
    IdealBasis I = buchberger({X(2), X() * Y(), Y(2)}, MonomialOrder::lex_yx());
    CHECK(ideal_compare(colon_principal(I, Y(), 1), xy) == IdealRel::Equal);
  }

  SECTION("colon by a unit is the identity") {
    IdealBasis I = buchberger({X(2) + Y(3), X() * Y()}, MonomialOrder::lex_yx());
    CHECK(ideal_compare(colon_principal(I, C(1), 1), I) == IdealRel::Equal);
  }

  SECTION("colon by zero is rejected") {
    CHECK_THROWS_MATCHES(colon_principal(xy, BiPoly(), 1), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::ZeroPolynomial;
                         }));
  }
}

TEST_CASE("iterated colon agrees with colon by a power", "[groebner]") {
  std::vector<IdealBasis> ideals = {
      buchberger({X(3), X() * Y(2), Y(4)}, MonomialOrder::lex_yx()),
      buchberger({X(2) + Y(3), X() * Y()}, MonomialOrder::lex_yx()),
  };
  std::vector<BiPoly> divisors = {Y(), Y() + X(2)};
  for (const IdealBasis& I : ideals)
    for (const BiPoly& g : divisors) {
      IdealBasis twice = colon_principal(colon_principal(I, g, 1), g, 1);
      IdealBasis once = colon_principal(I, g, 2);
      CHECK(ideal_compare(twice, once) == IdealRel::Equal);
      CHECK(same_polys(twice.gens, once.gens));
    }
}

TEST_CASE("reduced bases do not depend on generator presentation", "[groebner]") {
  std::mt19937_64 rng(20260819u);
  std::vector<BiPoly> gens = {C(2) * X() * Y() + C(4) * X(3), C(2) * Y() + X(2),
                              C(4) * Y() + C(2) * X(2), X(5)};
  IdealBasis ref = buchberger(gens, MonomialOrder::lex_yx());

  std::vector<BiPoly> shuffled = gens;
  for (int trial = 0; trial < 12; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<BiPoly> padded = shuffled;
    // append random combinations of the generators: the span is unchanged
    for (int extra = 0; extra < 2; ++extra) {
      BiPoly combo;
      for (const BiPoly& g : gens) combo = combo + random_poly(rng, 2) * g;
      padded.push_back(combo);
    }
    IdealBasis again = buchberger(padded, MonomialOrder::lex_yx());
    CHECK(same_polys(again.gens, ref.gens));
    CHECK(colength(again) == colength(ref));
  }
}

TEST_CASE("normal forms decide membership", "[groebner]") {
  std::mt19937_64 rng(97531u);
  IdealBasis I = buchberger({X(2) + Y(3), X() * Y(2)}, MonomialOrder::lex_yx());
  for (int trial = 0; trial < 25; ++trial) {
    BiPoly member;
    for (const BiPoly& g : I.gens) member = member + random_poly(rng, 3) * g;
    CHECK(normal_form(member, I).is_zero());
    CHECK(ideal_member(member, I));
  }
  CHECK_FALSE(ideal_member(C(1), buchberger({X(), Y()}, MonomialOrder::lex_yx())));
  CHECK_FALSE(ideal_member(X(), buchberger({Y()}, MonomialOrder::lex_yx())));
  CHECK(BiPoly::compare(
            normal_form(X() + Y() + X() * Y(), buchberger({Y()}, MonomialOrder::lex_yx())),
            X()) == 0);
}

TEST_CASE("every monomial of total degree colength lies in the ideal", "[groebner]") {
  std::vector<IdealBasis> ideals = {
      buchberger({X(2), X() * Y(), Y(3)}, MonomialOrder::lex_yx()),
      buchberger({C(2) * Y() + X(2), X(3)}, MonomialOrder::lex_yx()),
      buchberger({X(2) + Y(3), X() * Y()}, MonomialOrder::lex_yx()),
  };
  for (const IdealBasis& I : ideals) {
    auto c = colength(I);
    REQUIRE(c.has_value());
    long n = *c;
    for (long a = 0; a <= n; ++a)
      CHECK(ideal_member(X(static_cast<int>(a)) * Y(static_cast<int>(n - a)), I));
  }
}

TEST_CASE("ideal comparison distinguishes all four outcomes", "[groebner]") {
  IdealBasis m1 = buchberger({X(), Y()}, MonomialOrder::lex_yx());
  IdealBasis m2 = buchberger({X() + Y(), Y()}, MonomialOrder::lex_yx());
  CHECK(ideal_compare(m1, m2) == IdealRel::Equal);

  IdealBasis big = buchberger({Y(), X(3)}, MonomialOrder::lex_yx());
  IdealBasis small = buchberger({Y(), X(4)}, MonomialOrder::lex_yx());
  CHECK(ideal_compare(small, big) == IdealRel::LeftInRight);
  CHECK(ideal_compare(big, small) == IdealRel::RightInLeft);

  CHECK(ideal_compare(buchberger({X()}, MonomialOrder::lex_yx()),
                      buchberger({Y()}, MonomialOrder::lex_yx())) == IdealRel::Incomparable);
}

TEST_CASE("colength is independent of the monomial order", "[groebner]") {
  std::vector<std::vector<BiPoly>> gen_sets = {
      {X(2) + Y(3), X() * Y()},
      {C(2) * Y() + X(2), X(3)},
      {Y(2) + X(2) * Y() + X(4), C(2) * X() * Y() + C(4) * X(3)},
      {X(3), X() * Y(2), Y(4)},
  };
  for (const auto& gens : gen_sets) {
    auto a = colength(buchberger(gens, MonomialOrder::lex_yx()));
    auto b = colength(buchberger(gens, MonomialOrder::lex_xy()));
    auto c = colength(buchberger(gens, MonomialOrder::degrevlex()));
    CHECK(a == b);
    CHECK(b == c);
  }
}
