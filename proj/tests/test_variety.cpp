#include "polypart/variety.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace polypart;

namespace {

Polynomial shifted_square() {  // x1^2 - 1
  Polynomial p(2);
  p.add_term(Monomial({2, 0}), 1.0);
  p.add_term(Monomial({0, 0}), -1.0);
  return p;
}

}  // namespace

TEST_SUITE("variety") {

TEST_CASE("factories and dimensions") {
  const auto pt = Variety::point({1.0, 2.0});
  CHECK(pt.kind() == VarietyKind::Point);
  CHECK(pt.k() == 0);
  CHECK(pt.ambient_dim() == 2);

  const auto seg = Variety::line({0.0, 0.0}, {1.0, 0.0}, -2.0, 2.0, 5);
  CHECK(seg.kind() == VarietyKind::Parametric);
  CHECK(seg.form() == CurveForm::Line);
  CHECK(seg.k() == 1);
  CHECK_FALSE(seg.closed());
  CHECK(seg.at(0.5) == Point{0.5, 0.0});

  const auto ring = Variety::circle({0.0, 0.0}, 2.0, 8);
  CHECK(ring.closed());
  CHECK(ring.at(0.0) == Point{2.0, 0.0});

  const auto lifted = Variety::circle({0.0, 0.0, 5.0}, 1.0, {1.0, 0.0, 0.0},
                                      {0.0, 1.0, 0.0}, 8);
  CHECK(lifted.ambient_dim() == 3);
  CHECK(lifted.at(0.0) == Point{1.0, 0.0, 5.0});

  Polynomial square(1);
  square.add_term(Monomial({2}), 1.0);
  const auto parabola = Variety::graph(square, -1.0, 1.0, 5);
  CHECK(parabola.ambient_dim() == 2);
  CHECK(parabola.at(2.0) == Point{2.0, 4.0});

  CHECK_THROWS_AS(Variety::line({0.0}, {0.0}, 0.0, 1.0, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(Variety::circle({0.0, 0.0}, -1.0, 8), std::invalid_argument);
}

TEST_CASE("implicit varieties validate their seeds") {
  Polynomial unit_circle(2);
  unit_circle.add_term(Monomial({2, 0}), 1.0);
  unit_circle.add_term(Monomial({0, 2}), 1.0);
  unit_circle.add_term(Monomial({0, 0}), -1.0);

  const auto curve =
      Variety::implicit({unit_circle}, {{1.0, 0.0}, {0.0, 1.0}}, 1e-9);
  CHECK(curve.kind() == VarietyKind::Implicit);
  CHECK(curve.k() == 1);
  CHECK(witness_points(curve).size() == 2);

  CHECK_THROWS_AS(
      Variety::implicit({unit_circle}, {{0.5, 0.0}}, 1e-9),
      std::invalid_argument);
}

TEST_CASE("witness points") {
  // inclusive endpoints on open curves
  const auto seg = Variety::line({0.0, 0.0}, {1.0, 0.0}, -2.0, 2.0, 5);
  const auto pts = witness_points(seg);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == Point{-2.0, 0.0});
  CHECK(pts.back() == Point{2.0, 0.0});

  // a single sample sits at the middle of the range
  const auto mid = witness_points(Variety::line({0.0, 0.0}, {1.0, 0.0},
                                                -2.0, 2.0, 1));
  REQUIRE(mid.size() == 1);
  CHECK(mid[0] == Point{0.0, 0.0});

  // closed curves do not duplicate the seam
  const auto ring = witness_points(Variety::circle({0.0, 0.0}, 1.0, 4));
  REQUIRE(ring.size() == 4);
  CHECK(ring[0][0] == doctest::Approx(1.0));
  CHECK(ring[1][1] == doctest::Approx(1.0));

  CHECK(witness_points(Variety::point({3.0, 4.0})) ==
        std::vector<Point>{{3.0, 4.0}});
}

TEST_CASE("indicator matches prescribed signs") {
  const std::vector<Polynomial> polys{Polynomial::variable(2, 0),
                                      Polynomial::variable(2, 1)};
  const auto pt = Variety::point({2.0, 3.0});
  CHECK(indicator(pt, polys, 0b00, 1e-9) == 1);
  CHECK(indicator(pt, polys, 0b01, 1e-9) == 0);
  CHECK(indicator(pt, polys, 0b10, 1e-9) == 0);

  const auto mixed = Variety::point({-2.0, 3.0});
  CHECK(indicator(mixed, polys, 0b01, 1e-9) == 1);

  // a witness inside a tau band matches no pattern
  const auto banded = Variety::point({0.0, 1.0});
  for (std::uint32_t alpha = 0; alpha < 4; ++alpha)
    CHECK(indicator(banded, polys, alpha, 1e-9) == 0);

  // a curve can meet several patterns
  const auto seg = Variety::line({0.0, 1.0}, {1.0, 0.0}, -1.0, 1.0, 9);
  CHECK(indicator(seg, polys, 0b00, 1e-9) == 1);
  CHECK(indicator(seg, polys, 0b01, 1e-9) == 1);
  CHECK(indicator(seg, polys, 0b10, 1e-9) == 0);
}

TEST_CASE("crossing counts along curves") {
  SUBCASE("two sign changes across a strip") {
    const auto seg = Variety::line({0.0, 0.0}, {1.0, 0.0}, -2.3, 2.3, 100);
    const auto cc = crossing_count(seg, shifted_square(), 100);
    CHECK(cc.runs == 3);
    CHECK_FALSE(cc.degenerate);
    REQUIRE(cc.crossings.size() == 2);
    CHECK(cc.crossings[0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(cc.crossings[1] == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("constant sign along the curve") {
    const auto seg = Variety::line({3.0, 0.0}, {0.0, 1.0}, -1.0, 1.0, 16);
    const auto cc = crossing_count(seg, Polynomial::variable(2, 0), 64);
    CHECK(cc.runs == 1);
    CHECK(cc.crossings.empty());
  }

  SUBCASE("curve inside the zero set is degenerate") {
    const auto seg = Variety::line({0.0, 0.0}, {1.0, 0.0}, -1.0, 1.0, 16);
    const auto cc = crossing_count(seg, Polynomial::variable(2, 1), 64);
    CHECK(cc.degenerate);
    CHECK(cc.runs == 0);
  }

  SUBCASE("closed curves merge the seam run") {
    const auto ring = Variety::circle({0.0, 0.0}, 2.0, 64);
    const auto cc = crossing_count(ring, Polynomial::variable(2, 0), 64);
    CHECK(cc.runs == 2);
    REQUIRE(cc.crossings.size() == 2);
    CHECK(cc.crossings[0] ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
    CHECK(cc.crossings[1] ==
          doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-6));
  }
}

TEST_CASE("families are homogeneous") {
  std::vector<Variety> pts{Variety::point({0.0, 0.0}),
                           Variety::point({1.0, 1.0})};
  const Family family("red", pts);
  CHECK(family.size() == 2);
  CHECK(family.k() == 0);
  CHECK(family.ambient_dim() == 2);
  CHECK(family.all_points());

  std::vector<Variety> lines{
      Variety::line({0.0, 0.0}, {1.0, 0.0}, 0.0, 1.0, 4)};
  CHECK_FALSE(Family("l", lines).all_points());

  std::vector<Variety> mixed{Variety::point({0.0, 0.0}),
                             Variety::line({0.0, 0.0}, {1.0, 0.0}, 0.0, 1.0, 4)};
  CHECK_THROWS_AS(Family("bad", mixed), std::invalid_argument);
  CHECK_THROWS_AS(Family("empty", std::vector<Variety>{}),
                  std::invalid_argument);
}

}  // TEST_SUITE
