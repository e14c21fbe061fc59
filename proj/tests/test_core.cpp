/* Apache License, Version 2.0 */

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gbpd/core.hpp"
#include "gbpd/error.hpp"
#include "gbpd/numeric.hpp"

using namespace gbpd;

TEST_SUITE("core") {
  TEST_CASE("distance examples") {
    const Vec2 p{1.5, -2.0};
    CHECK(dist_g(p, {0, p, {2, 1, 3}, 2.0}) == doctest::Approx(-2.0));
    CHECK(dist_g({3, 4}, {0, {0, 0}, SymMat2::identity(), 0.0}) == doctest::Approx(25.0));
    // (1,1) . [[2,1],[1,3]] (1,1) = 2 + 1 + 1 + 3, minus w = 2.
    CHECK(dist_g(p + Vec2{1, 1}, {0, p, {2, 1, 3}, 2.0}) == doctest::Approx(5.0));
  }

  TEST_CASE("classical special cases") {
    const Vec2 x{3, 4};
    CHECK(special_distance(x, {0, {0, 0}, SymMat2::identity(), 25.0}, DistanceKind::Laguerre) ==
          doctest::Approx(0.0));
    CHECK(special_distance(x, {0, {0, 0}, SymMat2::identity(), 0.0}, DistanceKind::Voronoi) == doctest::Approx(5.0));
    CHECK(special_distance(x, {0, {0, 0}, SymMat2::identity() * (1.0 / 25.0), 0.0},
                           DistanceKind::MultiplicativelyWeighted) == doctest::Approx(1.0));
  }

  TEST_CASE("generator ellipses") {
    const EllipseGeom unit = generator_to_ellipse({0, {1, 2}, SymMat2::identity(), 0.0});
    CHECK(unit.center == Vec2{1, 2});
    CHECK(unit.semi_axes[0] == doctest::Approx(1.0));
    CHECK(unit.semi_axes[1] == doctest::Approx(1.0));

    const EllipseGeom e = generator_to_ellipse({0, {0, 0}, {0.25, 0, 1}, 0.0});
    CHECK(e.semi_axes[0] == doctest::Approx(2.0));
    CHECK(e.semi_axes[1] == doctest::Approx(1.0));
    CHECK(e.angle == doctest::Approx(0.0));

    CHECK(generator_to_ellipse({0, {0, 0}, SymMat2::identity(), 3.0}).semi_axes[0] == doctest::Approx(2.0));
    CHECK(generator_to_ellipse({0, {0, 0}, SymMat2::identity(), 3.0}, false).semi_axes[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(generator_to_ellipse({0, {0, 0}, SymMat2::identity(), -1.0}), Error);
  }

  TEST_CASE("eigen decomposition round trip") {
    const SymMat2 m{3.0, 1.2, 0.7};
    const SymEigen2 e = eigen_sym2(m);
    CHECK(e.values[0] >= e.values[1]);
    CHECK(e.values[0] + e.values[1] == doctest::Approx(m.trace()));
    CHECK(e.values[0] * e.values[1] == doctest::Approx(m.det()));
    const SymMat2 back = compose_sym2(e.angle, e.values[0], e.values[1]);
    CHECK(back.m11 == doctest::Approx(m.m11));
    CHECK(back.m12 == doctest::Approx(m.m12));
    CHECK(back.m22 == doctest::Approx(m.m22));
  }

  TEST_CASE("scene validation and nearest generator") {
    Scene s{{0, {0, 0}, SymMat2::identity(), 0.0}, {1, {2, 0}, SymMat2::identity(), 0.0}};
    CHECK_NOTHROW(validate_scene(s));
    // Midpoint is a tie and goes to the lower index.
    CHECK(nearest_generator(s, {1, 0}) == 0);
    CHECK(nearest_generator(s, {1.01, 0}) == 1);
    s[1].id = 0;
    CHECK_THROWS_AS(validate_scene(s), Error);
    s[1].id = 1;
    s[1].m = {1, 2, 1};
    CHECK_THROWS_AS(validate_scene(s), Error);
  }
}

TEST_SUITE("numeric") {
  TEST_CASE("polynomial roots") {
    const auto q = numeric::solve_quadratic(2, -3, 1);
    REQUIRE(q.size() == 2);
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(2.0));
    CHECK(numeric::solve_quadratic(1, 0, 1).empty());
    const auto lin = numeric::solve_quadratic(-4, 2, 0);
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == doctest::Approx(2.0));

    const auto c = numeric::solve_cubic(-6, 11, -6, 1);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == doctest::Approx(3.0));
  }

  TEST_CASE("trigonometric roots") {
    const auto r = numeric::solve_trig(1, 0, -0.5);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-std::numbers::pi / 3));
    CHECK(r[1] == doctest::Approx(std::numbers::pi / 3));
    CHECK(numeric::solve_trig(1, 0, 2).empty());
  }

  TEST_CASE("quadrature and angle wrapping") {
    CHECK(numeric::integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(numeric::integrate([](double x) { return std::sqrt(x); }, 0, 1, 1e-10) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(numeric::integrate([](double) { return 0.0; }, 0, 1, 1e-12, 1e-15) == 0.0);
    // Reversed bounds flip the sign and refine just as much.
    const auto peak = [](double x) { return 1.0 / (1e-4 + x * x); };
    const double exact = 2.0 * std::atan(1.0 / 1e-2) / 1e-2;
    CHECK(numeric::integrate(peak, -1, 1, 1e-12) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(numeric::integrate(peak, 1, -1, 1e-12) == doctest::Approx(-exact).epsilon(1e-10));
    CHECK(numeric::wrap_angle(1.5 * std::numbers::pi) == doctest::Approx(-0.5 * std::numbers::pi));
    CHECK(numeric::wrap_angle(std::numbers::pi) == doctest::Approx(-std::numbers::pi));
  }
}
