/* Apache License, Version 2.0 */

#include "gbpd/core.hpp"

#include <numbers>
#include <set>
#include <string>

#include "gbpd/error.hpp"

namespace gbpd {

SymEigen2 eigen_sym2(const SymMat2& m) {
  const double half_trace = 0.5 * m.trace();
  const double half_diff = 0.5 * (m.m11 - m.m22);
  const double r = std::hypot(half_diff, m.m12);
  SymEigen2 e;
  e.values = {half_trace + r, half_trace - r};
  const double scale = std::max(std::abs(e.values[0]), std::abs(e.values[1]));
  if (r <= 1e-12 * scale || r == 0.0) {
    e.angle = 0.0;
    return e;
  }
  double angle = 0.5 * std::atan2(m.m12, half_diff);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  e.angle = angle;
  return e;
}

SymMat2 compose_sym2(double angle, double v_along, double v_across) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {v_along * c * c + v_across * s * s, (v_along - v_across) * c * s,
          v_along * s * s + v_across * c * c};
}

double dist_g(const Vec2& x, const Generator& g) { return g.m.quad(x - g.p) - g.w; }

double special_distance(const Vec2& x, const Generator& g, DistanceKind kind) {
  const Vec2 d = x - g.p;
  switch (kind) {
    case DistanceKind::Voronoi:
      return norm(d);
    case DistanceKind::Laguerre:
      return dot(d, d) - g.w;
    case DistanceKind::MultiplicativelyWeighted: {
      if (g.m.m12 != 0.0 || g.m.m11 != g.m.m22 || g.m.m11 <= 0.0)
        throw Error(ErrorKind::InvalidInput, "multiplicatively weighted distance needs M = (1/sigma^2) I");
      return norm(d) * std::sqrt(g.m.m11);
    }
  }
  return 0.0;
}

EllipseGeom generator_to_ellipse(const Generator& g, bool scaled) {
  double factor = 1.0;
  if (scaled) {
    if (1.0 + g.w <= 0.0)
      throw Error(ErrorKind::NonRenderable, "generator " + std::to_string(g.id) + " has 1 + w <= 0");
    factor = 1.0 + g.w;
  }
  // The major semi-axis belongs to the smaller eigenvalue of M.
  const SymEigen2 e = eigen_sym2(g.m);
  EllipseGeom out;
  out.center = g.p;
  out.semi_axes = {std::sqrt(factor / e.values[1]), std::sqrt(factor / e.values[0])};
  if (out.semi_axes[0] == out.semi_axes[1]) {
    out.angle = 0.0;
  } else {
    double a = e.angle + 0.5 * std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    out.angle = a;
  }
  return out;
}

void validate_scene(const Scene& scene) {
  std::set<int> ids;
  for (const Generator& g : scene) {
    if (!g.m.positive_definite())
      throw Error(ErrorKind::InvalidInput, "generator " + std::to_string(g.id) + ": M is not positive definite");
    if (!std::isfinite(g.p.x) || !std::isfinite(g.p.y) || !std::isfinite(g.w))
      throw Error(ErrorKind::InvalidInput, "generator " + std::to_string(g.id) + ": non-finite value");
    if (!ids.insert(g.id).second)
      throw Error(ErrorKind::InvalidInput, "duplicate generator id " + std::to_string(g.id));
  }
}

int nearest_generator(const Scene& scene, const Vec2& x) {
  int best = -1;
  double best_d = 0.0;
  for (int k = 0; k < static_cast<int>(scene.size()); ++k) {
    const double d = dist_g(x, scene[k]);
    if (best < 0 || d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

}  // namespace gbpd
