#include "doctest.h"
#include "gcx/bound.hpp"
#include "gcx/core.hpp"

using namespace gcx;

TEST_CASE("conjecture bound") {
  CHECK(conjecture_bound(3, 6) == 9);
  CHECK(conjecture_bound(2, 4) == 4);
  CHECK(conjecture_bound(1, 7) == 6);
  CHECK_THROWS_AS(conjecture_bound(4, 4), InvalidInput);
  CHECK_THROWS_AS(conjecture_bound(0, 3), InvalidInput);
}

TEST_CASE("theorem bound values") {
  CHECK(theorem_bound(3, 6) == 64);
  CHECK(theorem_bound(2, 5) == 6);
  CHECK(theorem_bound(4, 6) == Rat(243, 2));
  CHECK(theorem_bound(1, 9) == 8);
  CHECK(theorem_bound_strict(3, 6));
  CHECK_FALSE(theorem_bound_strict(2, 5));
  CHECK_FALSE(theorem_bound_strict(1, 5));
}

TEST_CASE("dual bound values") {
  CHECK(dual_bound(4, 6) == 10);
  CHECK(dual_bound(3, 6) == 64);
  CHECK(dual_bound(3, 7) == 125);
}

TEST_CASE("constructive bound recursion") {
  CHECK(constructive_bound(1, 5) == 4);
  CHECK(constructive_bound(2, 4) == 8);
  CHECK(constructive_bound(3, 5) == 32);
}

TEST_CASE("theorem bound satisfies the step recursion for k > 3") {
  for (int n = 5; n <= 12; ++n)
    for (int k = 4; k < n; ++k) {
      Rat lhs = theorem_bound(k, n);
      Rat rhs = Rat((n - k + 1) * (n - k + 1), 2) * theorem_bound(k - 1, n - 1);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("conjecture bound duality symmetry") {
  for (int n = 2; n <= 12; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(conjecture_bound(k, n) == conjecture_bound(n - k, n));
}

TEST_CASE("conjecture below theorem in the strict regime") {
  for (int n = 4; n <= 12; ++n)
    for (int k = 3; k < n; ++k)
      CHECK(Rat(conjecture_bound(k, n)) < theorem_bound(k, n));
}
