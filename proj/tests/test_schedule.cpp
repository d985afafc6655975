#include "polypart/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace polypart;

TEST_SUITE("schedule") {

TEST_CASE("compute_delta on pinned instances") {
  CHECK(compute_delta(1, 1, 1) == 1);
  CHECK(compute_delta(1, 1, 2) == 2);   // smallest d with d^2 >= 2
  CHECK(compute_delta(4, 3, 2) == 7);   // smallest d with d^2 >= 48
  CHECK(compute_delta(2, 2, 3) == 3);   // smallest d with d^3 >= 24
}

TEST_CASE("delta is the minimal solution and meets the strict upper bound") {
  // d^n >= n! j 2^(l-1), (d-1)^n falls short, and d^n < n! j 2^n 2^(l-1),
  // all compared in 128-bit integers.
  for (int n = 1; n <= 4; ++n)
    for (int j = 1; j <= 4; ++j)
      for (int ell = 1; ell <= 12; ++ell) {
        const int d = compute_delta(ell, j, n);
        const exact::u128 target = exact::checked_shl(
            exact::checked_mul(exact::factorial(n), exact::u128(j)), ell - 1);
        CHECK(exact::compare_pow(exact::u128(d), n, target) >= 0);
        if (d > 1)
          CHECK(exact::compare_pow(exact::u128(d - 1), n, target) < 0);
        CHECK(exact::compare_pow(exact::u128(d), n,
                                 exact::checked_shl(target, n)) < 0);
      }
}

TEST_CASE("compute_schedule on pinned instances") {
  auto sched = compute_schedule({1, 1, 10});
  CHECK(sched.deltas == std::vector<int>{1, 2, 4});
  CHECK(sched.s == 3);
  CHECK(sched.total_degree == 7);

  sched = compute_schedule({2, 1, 9});
  CHECK(sched.deltas == std::vector<int>{2, 2, 3});
  CHECK(sched.s == 3);

  sched = compute_schedule({2, 1, 1});
  CHECK(sched.deltas.empty());
  CHECK(sched.s == 0);
  CHECK(sched.total_degree == 0);

  sched = compute_schedule({2, 2, 12});
  CHECK(sched.deltas == std::vector<int>{2, 3, 4});
  CHECK(sched.s == 3);
}

TEST_CASE("stage count is maximal for the budget") {
  for (int n = 1; n <= 3; ++n)
    for (int j = 1; j <= 3; ++j)
      for (int D = 1; D <= 200; ++D) {
        const auto sched = compute_schedule({n, j, D});
        CHECK(sched.total_degree <= D);
        // one more stage would overshoot
        CHECK(sched.total_degree + compute_delta(sched.s + 1, j, n) > D);
      }
}

TEST_CASE("cell count constant") {
  CHECK(cell_bound_constant(1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cell_bound_constant(2) == doctest::Approx(93.2548).epsilon(1e-5));
  // 96 / (2^(1/3) - 1)^3
  CHECK(cell_bound_constant(3) ==
        doctest::Approx(5466.9723237159831522).epsilon(1e-12));
}

TEST_CASE("2^-s stays below C_n j / D^n") {
  for (int n = 1; n <= 3; ++n) {
    const double cn = cell_bound_constant(n);
    for (int j = 1; j <= 3; ++j)
      for (int D = 1; D <= 200; ++D) {
        const auto sched = compute_schedule({n, j, D});
        CHECK(std::ldexp(1.0, -sched.s) <
              cn * j / std::pow(double(D), double(n)));
      }
  }
}

TEST_CASE("deltas never decrease and s grows with the budget") {
  for (int n = 1; n <= 4; ++n)
    for (int j = 1; j <= 4; ++j) {
      for (int ell = 2; ell <= 12; ++ell)
        CHECK(compute_delta(ell, j, n) >= compute_delta(ell - 1, j, n));
      int prev_s = 0;
      for (int D = 1; D <= 60; ++D) {
        const auto sched = compute_schedule({n, j, D});
        CHECK(sched.s >= prev_s);
        prev_s = sched.s;
      }
    }
}

TEST_CASE("subspace dimension fits inside the degree-delta polynomials") {
  // C(delta_l + n, n) >= j 2^(l-1) + 1
  for (int n = 1; n <= 4; ++n)
    for (int j = 1; j <= 4; ++j)
      for (int ell = 1; ell <= 12; ++ell) {
        const int d = compute_delta(ell, j, n);
        const exact::u128 needed =
            exact::checked_shl(exact::u128(j), ell - 1) + 1;
        CHECK(exact::binomial_at_least(exact::u128(d + n), n, needed));
      }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate({0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 1, 0}), std::invalid_argument);
  CHECK_NOTHROW(validate({1, 1, 1}));
}

TEST_CASE("exact helpers") {
  CHECK(exact::factorial(0) == 1);
  CHECK(exact::factorial(5) == 120);
  CHECK_THROWS_AS(exact::factorial(35), std::overflow_error);

  const exact::u128 big = exact::u128(1) << 100;
  CHECK_THROWS_AS(exact::checked_mul(big, big), std::overflow_error);
  CHECK_THROWS_AS(exact::checked_shl(big, 30), std::overflow_error);

  CHECK(exact::compare_pow(2, 10, 1024) == 0);
  CHECK(exact::compare_pow(2, 10, 1025) < 0);
  CHECK(exact::compare_pow(3, 80, big) > 0);  // saturates, no overflow
  CHECK(exact::binomial_at_least(10, 5, 252));
  CHECK_FALSE(exact::binomial_at_least(10, 5, 253));
}

}  // TEST_SUITE
