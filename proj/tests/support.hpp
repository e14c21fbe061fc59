/* Apache License, Version 2.0 */

// Independent reference computations for the tests: they use only the scene
// data and plain arithmetic, never the library's geometric machinery.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gbpd/core.hpp"

namespace gbpd::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }
  int index(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 rng_;
};

/// Anisotropic generator: major semi-axis in [10, 20], minor in [0.5, 10].
inline Generator random_generator(Rng& r, int id, double w_lo = 0.0, double w_hi = 50.0, double box = 400.0) {
  const double theta = r.uniform(0.0, 3.14159265358979323846);
  const double a = r.uniform(10.0, 20.0);
  const double b = r.uniform(0.5, 10.0);
  const double c = std::cos(theta), s = std::sin(theta);
  const double va = 1.0 / (a * a), vb = 1.0 / (b * b);
  Generator g;
  g.id = id;
  g.p = {r.uniform(0.0, box), r.uniform(0.0, box)};
  g.m = {va * c * c + vb * s * s, (va - vb) * c * s, va * s * s + vb * c * c};
  g.w = r.uniform(w_lo, w_hi);
  return g;
}

inline Scene random_scene(Rng& r, int n, double w_lo = 0.0, double w_hi = 50.0) {
  Scene s;
  for (int k = 0; k < n; ++k) s.push_back(random_generator(r, k, w_lo, w_hi));
  return s;
}

inline long double dist_ld(long double x, long double y, const Generator& g) {
  const long double dx = x - g.p.x, dy = y - g.p.y;
  return g.m.m11 * dx * dx + 2.0L * g.m.m12 * dx * dy + g.m.m22 * dy * dy - g.w;
}

/// Power-diagram vertex of three isotropic generators (M = I): the radical
/// centre, from the two linear equations |x - p_a|^2 - w_a = |x - p_b|^2 - w_b.
inline bool radical_center(const Generator& a, const Generator& b, const Generator& c, Vec2& out) {
  const long double ax = a.p.x, ay = a.p.y, bx = b.p.x, by = b.p.y, cx = c.p.x, cy = c.p.y;
  const long double r1 = bx * bx + by * by - b.w - (ax * ax + ay * ay - a.w);
  const long double r2 = cx * cx + cy * cy - c.w - (ax * ax + ay * ay - a.w);
  const long double m11 = 2 * (bx - ax), m12 = 2 * (by - ay), m21 = 2 * (cx - ax), m22 = 2 * (cy - ay);
  const long double det = m11 * m22 - m12 * m21;
  if (std::fabs(static_cast<double>(det)) < 1e-12) return false;
  out = {static_cast<double>((r1 * m22 - m12 * r2) / det), static_cast<double>((m11 * r2 - m21 * r1) / det)};
  return true;
}

/// Brute-force label of a point, ties to the lowest index.
inline int brute_label(const Scene& s, double x, double y) {
  int best = 0;
  long double bd = dist_ld(x, y, s[0]);
  for (int k = 1; k < static_cast<int>(s.size()); ++k) {
    const long double d = dist_ld(x, y, s[k]);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

struct Quadric {
  double a11, a12, a22, b1, b2, c;
  long double f(long double x, long double y) const {
    return a11 * x * x + 2.0L * a12 * x * y + a22 * y * y + b1 * x + b2 * y + c;
  }
  std::array<long double, 2> grad(long double x, long double y) const {
    return {2.0L * a11 * x + 2.0L * a12 * y + b1, 2.0L * a12 * x + 2.0L * a22 * y + b2};
  }
};

/// Common zeros of two quadrics inside [x0, x1] x [y0, y1]: each grid cell in
/// which both functions change sign along their marching-squares contours
/// seeds a Newton solve in long double; converged roots are clustered.
inline std::vector<Vec2> grid_intersections(const Quadric& f, const Quadric& g, double x0, double y0, double x1,
                                            double y1, int n) {
  std::vector<Vec2> roots;
  const double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
  std::vector<long double> fv((n + 1) * (n + 1)), gv((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      fv[j * (n + 1) + i] = f.f(x0 + i * hx, y0 + j * hy);
      gv[j * (n + 1) + i] = g.f(x0 + i * hx, y0 + j * hy);
    }
  const auto changes = [&](const std::vector<long double>& v, int i, int j) {
    const long double a = v[j * (n + 1) + i], b = v[j * (n + 1) + i + 1], c = v[(j + 1) * (n + 1) + i],
                      d = v[(j + 1) * (n + 1) + i + 1];
    const long double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
    return lo <= 0 && hi >= 0;
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!changes(fv, i, j) || !changes(gv, i, j)) continue;
      long double x = x0 + (i + 0.5) * hx, y = y0 + (j + 0.5) * hy;
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const auto gf = f.grad(x, y), gg = g.grad(x, y);
        const long double det = gf[0] * gg[1] - gf[1] * gg[0];
        if (det == 0) break;
        const long double vf = f.f(x, y), vg = g.f(x, y);
        const long double dx = (vf * gg[1] - vg * gf[1]) / det;
        const long double dy = (gf[0] * vg - gg[0] * vf) / det;
        x -= dx;
        y -= dy;
        if (std::fabs(static_cast<double>(dx)) + std::fabs(static_cast<double>(dy)) < 1e-14 * (1 + std::fabs(static_cast<double>(x)) + std::fabs(static_cast<double>(y)))) {
          ok = true;
          break;
        }
      }
      // Keep roots that stay near the seeding cell.
      if (!ok || std::fabs(static_cast<double>(x) - (x0 + (i + 0.5) * hx)) > 2 * hx ||
          std::fabs(static_cast<double>(y) - (y0 + (j + 0.5) * hy)) > 2 * hy)
        continue;
      const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
      const bool dup = std::any_of(roots.begin(), roots.end(), [&](const Vec2& q) { return norm(q - p) < 1e-7; });
      if (!dup) roots.push_back(p);
    }
  }
  return roots;
}

}  // namespace gbpd::test
