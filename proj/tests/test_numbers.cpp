// Exact rational arithmetic: construction, printing, powers, roots.
#include <catch2/catch_amalgamated.hpp>

#include "curvelog/numbers.hpp"

using namespace curvelog;

TEST_CASE("rational construction canonicalizes", "[numbers]") {
  CHECK(to_string(rational_of(2, 3)) == "2/3");
  CHECK(to_string(rational_of(4, 6)) == "2/3");
  CHECK(to_string(rational_of(-4, 6)) == "-2/3");
  CHECK(to_string(rational_of(4, -6)) == "-2/3");
  CHECK(to_string(rational_of(7)) == "7");
  CHECK(to_string(rational_of(0, 5)) == "0");
  CHECK_THROWS_AS(rational_of(1, 0), Error);
}

TEST_CASE("integer detection and sign", "[numbers]") {
  CHECK(is_integer(rational_of(6, 3)));
  CHECK_FALSE(is_integer(rational_of(2, 3)));
  CHECK(sign_of(rational_of(-2, 3)) == -1);
  CHECK(sign_of(rational_of(0)) == 0);
  CHECK(sign_of(rational_of(5, 2)) == 1);
}

TEST_CASE("powers with negative exponents", "[numbers]") {
  CHECK(pow_rational(rational_of(2, 3), 3) == rational_of(8, 27));
  CHECK(pow_rational(rational_of(2, 3), -2) == rational_of(9, 4));
  CHECK(pow_rational(rational_of(-2), 3) == rational_of(-8));
  CHECK(pow_rational(rational_of(5), 0) == rational_of(1));
  CHECK(pow_rational(rational_of(0), 4) == rational_of(0));
  CHECK_THROWS_AS(pow_rational(rational_of(0), -1), Error);
}

TEST_CASE("exact roots", "[numbers]") {
  CHECK(exact_root(rational_of(8, 27), 3) == rational_of(2, 3));
  CHECK(exact_root(rational_of(4), 2) == rational_of(2));
  CHECK(exact_root(rational_of(-8), 3) == rational_of(-2));
  CHECK(exact_root(rational_of(0), 5) == rational_of(0));
  CHECK_FALSE(exact_root(rational_of(2), 2).has_value());
  CHECK_FALSE(exact_root(rational_of(-4), 2).has_value());
  CHECK_FALSE(exact_root(rational_of(8, 9), 3).has_value());
}

TEST_CASE("deterministic comparison", "[numbers]") {
  CHECK(compare(rational_of(1, 3), rational_of(1, 2)) < 0);
  CHECK(compare(rational_of(1, 2), rational_of(1, 2)) == 0);
  CHECK(compare(rational_of(3), rational_of(-7)) > 0);
}
