/* Apache License, Version 2.0 */

#include <cmath>

#include "doctest.h"
#include "gbpd/fit.hpp"
#include "gbpd/oracle.hpp"

using namespace gbpd;

namespace {

// Label 0 on the given pixels, background 1 elsewhere.
template <class Pred>
LabelImage region(int w, int h, Pred inside) {
  LabelImage img = blank_image({0, 0, static_cast<double>(w), static_cast<double>(h)}, w, h, 1);
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col)
      if (inside(col, row)) img.at(col, row) = 0;
  return img;
}

}  // namespace

TEST_SUITE("fit") {
  TEST_CASE("axis-aligned rectangle") {
    const LabelImage img = region(100, 60, [](int c, int r) { return c >= 30 && c < 70 && r >= 25 && r < 35; });
    const auto fits = fit_generators_from_labels(img);
    REQUIRE(fits.size() == 1);
    const FittedGenerator& f = fits[0];
    CHECK(f.pixels == 400);
    CHECK_FALSE(f.degenerate);
    // Variance of n consecutive integers is (n^2 - 1) / 12.
    CHECK(f.eigenvalues[0] == doctest::Approx((40.0 * 40 - 1) / 12));
    CHECK(f.eigenvalues[1] == doctest::Approx((10.0 * 10 - 1) / 12));
    CHECK(f.gen.p.x == doctest::Approx(50.0));
    CHECK(f.gen.p.y == doctest::Approx(30.0));
    CHECK(f.gen.m.m12 == doctest::Approx(0.0));
    CHECK(f.gen.m.m22 / f.gen.m.m11 == doctest::Approx(1599.0 / 99.0));
    CHECK(f.gen.m.m11 == doctest::Approx(12.0 / 1599.0));
  }

  TEST_CASE("disk is isotropic") {
    const LabelImage img = region(80, 80, [](int c, int r) { return std::hypot(c + 0.5 - 40, r + 0.5 - 40) < 25; });
    const FittedGenerator f = fit_generators_from_labels(img, 2.0, 0.5)[0];
    CHECK(std::abs(f.eigenvalues[0] / f.eigenvalues[1] - 1) <= 0.02);
    CHECK(f.gen.w == 0.5);
    CHECK(f.gen.m.m11 == doctest::Approx(1.0 / (2.0 * f.eigenvalues[0])).epsilon(0.02));
  }

  TEST_CASE("tiny regions fall back to an isotropic matrix") {
    const LabelImage img = region(10, 10, [](int c, int r) { return r == 3 && (c == 4 || c == 5); });
    const FittedGenerator f = fit_generators_from_labels(img, 4.0)[0];
    CHECK(f.degenerate);
    CHECK(f.gen.m == SymMat2{0.25, 0.0, 0.25});
  }

  TEST_CASE("transposed image swaps the axes") {
    const auto blob = [](int c, int r) { return (c - 20) * (c - 20) / 120.0 + (r - 12) * (r - 12) / 30.0 + (c - 20) * (r - 12) / 80.0 < 1; };
    const LabelImage a = region(50, 50, blob);
    const LabelImage b = region(50, 50, [&](int c, int r) { return blob(r, c); });
    const Generator ga = fit_generators_from_labels(a)[0].gen;
    const Generator gb = fit_generators_from_labels(b)[0].gen;
    CHECK(ga.m.m11 == doctest::Approx(gb.m.m22));
    CHECK(ga.m.m22 == doctest::Approx(gb.m.m11));
    // With rows counted downwards, transposing is a reflection in an
    // anti-diagonal, which keeps the mixed term.
    CHECK(ga.m.m12 == doctest::Approx(gb.m.m12));
  }
}
