#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "metrilog/rational.hpp"

using namespace metrilog;

TEST_CASE("construction reduces to canonical form") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(2, 4).num() == 1);
  CHECK(Rat(2, 4).den() == 2);
  CHECK(Rat(-3, -9) == Rat(1, 3));
  CHECK(Rat(3, -9) == Rat(-1, 3));
  CHECK(Rat(0, 7) == Rat(0, 1));
  CHECK(Rat(0, 7).den() == 1);
  CHECK_THROWS_AS(Rat(1, 0), MetrilogError);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 2) - Rat(3, 4) == Rat(-1, 4));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2, 1));
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0, 1), MetrilogError);
  // repeated evaluation yields identical canonical values
  Rat a = (Rat(7, 10) + Rat(2, 5)) * Rat(1, 3);
  Rat b = (Rat(7, 10) + Rat(2, 5)) * Rat(1, 3);
  CHECK(a == b);
  CHECK(a.num() == 11);
  CHECK(a.den() == 30);
}

TEST_CASE("comparisons") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(2, 6) <= Rat(1, 3));
  CHECK(Rat(-1, 2) < Rat(0, 1));
  CHECK(Rat::max(Rat(1, 4), Rat(3, 4)) == Rat(3, 4));
  CHECK(Rat::min(Rat(1, 4), Rat(3, 4)) == Rat(1, 4));
}

TEST_CASE("printing: p/q reduced, integers bare") {
  CHECK(Rat(2, 4).str() == "1/2");
  CHECK(Rat(0, 5).str() == "0");
  CHECK(Rat(3, 3).str() == "1");
  CHECK(Rat(5, 4).str() == "5/4");
  CHECK(Rat(-1, 2).str() == "-1/2");
}

TEST_CASE("unit-interval guard") {
  CHECK(rat01(1, 2) == Rat(1, 2));
  CHECK(rat01(0, 1) == Rat(0, 1));
  CHECK(rat01(1, 1) == Rat(1, 1));
  CHECK_THROWS_AS(rat01(3, 2), MetrilogError);
  CHECK_THROWS_AS(rat01(-1, 2), MetrilogError);
}

TEST_CASE("overflow raises instead of wrapping") {
  Rat big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * big, MetrilogError);
  CHECK_THROWS_AS(big + big, MetrilogError);
  CHECK(Rat(INT64_MAX / 2, 1) + Rat(INT64_MAX / 2, 1) == Rat(INT64_MAX - 1, 1));
}

TEST_CASE("enumeration of the unit rationals") {
  CHECK(enumerated_unit_rational(0) == Rat(1, 2));
  CHECK(enumerated_unit_rational(1) == Rat(1, 3));
  CHECK(enumerated_unit_rational(2) == Rat(2, 3));
  CHECK(enumerated_unit_rational(3) == Rat(1, 4));
  CHECK(enumerated_unit_rational(4) == Rat(3, 4));
  CHECK(enumerated_unit_rational(5) == Rat(1, 5));

  // all values lie in (0,1), are reduced, and never repeat
  std::vector<Rat> seen;
  for (int i = 0; i < 200; ++i) {
    Rat q = enumerated_unit_rational(i);
    CHECK(q > Rat(0, 1));
    CHECK(q < Rat(1, 1));
    CHECK(std::gcd(q.num(), q.den()) == 1);
    for (const Rat& other : seen) CHECK(q != other);
    seen.push_back(q);
  }
}
