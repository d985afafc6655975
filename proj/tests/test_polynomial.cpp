#include "polypart/polynomial.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "../src/rng.hpp"

using namespace polypart;

namespace {

Polynomial from_terms(
    int n, std::initializer_list<std::pair<std::vector<std::uint32_t>, double>>
               terms) {
  Polynomial p(n);
  for (const auto& [exps, c] : terms) p.add_term(Monomial(exps), c);
  return p;
}

std::uint64_t binomial(int top, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<std::uint64_t>(top - k + i) /
        static_cast<std::uint64_t>(i);
  return r;
}

Polynomial random_poly(int n, int degree, detail::Rng& rng) {
  const auto basis = monomial_basis(n, degree);
  Polynomial p(n);
  for (const Monomial& m : basis)
    p.add_term(m, rng.uniform(-1.0, 1.0));
  return p;
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("monomial basics") {
  const Monomial m({2, 0, 1});
  CHECK(m.dim() == 3);
  CHECK(m.degree() == 3);
  CHECK(m.value_at(std::vector<double>{2.0, 5.0, 3.0}) == 12.0);
  CHECK(m.to_string() == "x1^2 x3");
  CHECK(Monomial({0, 0}).is_constant());
}

TEST_CASE("monomial basis size and order") {
  const auto b21 = monomial_basis(2, 1);
  REQUIRE(b21.size() == 3);
  CHECK(b21[0] == Monomial({0, 0}));
  CHECK(b21[1] == Monomial({1, 0}));  // x1 before x2
  CHECK(b21[2] == Monomial({0, 1}));

  CHECK(monomial_basis(2, 2).size() == 6);
  CHECK(monomial_basis(3, 2).size() == 10);

  // graded lex: ascending degree, then x1-major
  const auto b22 = monomial_basis(2, 2);
  CHECK(b22[3] == Monomial({2, 0}));
  CHECK(b22[4] == Monomial({1, 1}));
  CHECK(b22[5] == Monomial({0, 2}));

  for (int n = 1; n <= 5; ++n)
    for (int delta = 0; delta <= 10; ++delta)
      CHECK(monomial_basis(n, delta).size() == binomial(delta + n, n));
}

TEST_CASE("evaluation") {
  const auto circle = from_terms(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
  CHECK(circle.evaluate(std::vector<double>{1.0, 1.0}) == 1.0);

  CHECK(Polynomial(2).evaluate(std::vector<double>{3.0, 4.0}) == 0.0);

  const auto hyperbola = from_terms(2, {{{1, 1}, 1.0}, {{0, 0}, -2.0}});
  CHECK(hyperbola.evaluate(std::vector<double>{2.0, 3.0}) == 4.0);

  CHECK_THROWS_AS(circle.evaluate(std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("degree and term bookkeeping") {
  CHECK(Polynomial(3).degree() == -1);
  CHECK(Polynomial::constant(2, 5.0).degree() == 0);
  CHECK(Polynomial::variable(2, 1).degree() == 1);

  Polynomial p(2);
  p.add_term(Monomial({1, 0}), 2.0);
  p.add_term(Monomial({1, 0}), -2.0);  // cancels away
  CHECK(p.is_zero());
}

TEST_CASE("sign regions") {
  const auto x1 = Polynomial::variable(2, 0);
  CHECK(sign_region(x1, std::vector<double>{2.0, 0.0}, 0.0) == Sign::Pos);
  CHECK(sign_region(x1, std::vector<double>{0.0, 5.0}, 0.0) == Sign::Zero);
  const auto shifted = from_terms(2, {{{1, 0}, 1.0}, {{0, 0}, -1.0}});
  CHECK(sign_region(shifted, std::vector<double>{0.9999999, 0.0}, 1e-6) ==
        Sign::Zero);

  // tau = 0 splits everything off the zero set into exactly two open parts
  detail::Rng rng(11);
  const auto p = random_poly(2, 3, rng);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double v = p.evaluate(x);
    const Sign sg = sign_region(p, x, 0.0);
    if (v > 0.0) CHECK(sg == Sign::Pos);
    if (v < 0.0) CHECK(sg == Sign::Neg);
  }
}

TEST_CASE("multiplication") {
  const auto x1 = Polynomial::variable(2, 0);
  const auto x2 = Polynomial::variable(2, 1);
  CHECK((x1 * x2).coefficient(Monomial({1, 1})) == 1.0);

  const auto plus = x1 + Polynomial::constant(2, 1.0);
  const auto minus = x1 + Polynomial::constant(2, -1.0);
  const auto prod = plus * minus;
  CHECK(prod.coefficient(Monomial({2, 0})) == 1.0);
  CHECK(prod.coefficient(Monomial({0, 0})) == -1.0);
  CHECK(prod.term_count() == 2);

  CHECK((x1 * Polynomial(2)).is_zero());

  detail::Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_poly(2, 3, rng);
    const auto q = random_poly(2, 2, rng);
    CHECK((p * q).degree() <= p.degree() + q.degree());
    const std::vector<double> x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    CHECK((p * q).evaluate(x) ==
          doctest::Approx(p.evaluate(x) * q.evaluate(x)).epsilon(1e-10));
  }
}

TEST_CASE("veronese lifting") {
  const std::vector<Monomial> monos{Monomial({1, 0}), Monomial({0, 1}),
                                    Monomial({1, 1})};
  CHECK(veronese_lift(std::vector<double>{2.0, 3.0}, monos) ==
        Point{2.0, 3.0, 6.0});
  CHECK(veronese_lift(std::vector<double>{0.0, 0.0}, monos) ==
        Point{0.0, 0.0, 0.0});

  const std::vector<Monomial> powers{Monomial({1}), Monomial({2})};
  CHECK(veronese_lift(std::vector<double>{2.0}, powers) == Point{2.0, 4.0});

  const std::vector<Monomial> with_constant{Monomial({0, 0})};
  CHECK_THROWS_AS(veronese_lift(std::vector<double>{1.0, 1.0}, with_constant),
                  std::invalid_argument);
}

}  // TEST_SUITE
