/* Apache License, Version 2.0 */

#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace gbpd {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

/// Symmetric 2x2 matrix; the off-diagonal is stored once.
struct SymMat2 {
  double m11 = 1.0;
  double m12 = 0.0;
  double m22 = 1.0;

  Vec2 operator*(const Vec2& v) const { return {m11 * v.x + m12 * v.y, m12 * v.x + m22 * v.y}; }
  SymMat2 operator-(const SymMat2& o) const { return {m11 - o.m11, m12 - o.m12, m22 - o.m22}; }
  SymMat2 operator*(double s) const { return {m11 * s, m12 * s, m22 * s}; }
  double det() const { return m11 * m22 - m12 * m12; }
  double trace() const { return m11 + m22; }
  double quad(const Vec2& v) const { return m11 * v.x * v.x + 2.0 * m12 * v.x * v.y + m22 * v.y * v.y; }
  bool positive_definite() const { return m11 > 0.0 && det() > 0.0; }
  bool operator==(const SymMat2&) const = default;

  static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
};

/// Weighted elliptic generator: d(x) = (x - p)^T M (x - p) - w.
struct Generator {
  int id = 0;
  Vec2 p;
  SymMat2 m;
  double w = 0.0;

  bool operator==(const Generator&) const = default;
};

using Scene = std::vector<Generator>;

/// Closed-form eigen-decomposition of a symmetric 2x2 matrix. `values` are
/// sorted descending; `angle` is the direction of the eigenvector of
/// `values[0]`, in [0, pi). Equal eigenvalues (1e-12 relative) give angle 0.
struct SymEigen2 {
  std::array<double, 2> values{};
  double angle = 0.0;
};
SymEigen2 eigen_sym2(const SymMat2& m);

/// Rebuilds U diag(values) U^T from an eigen-decomposition.
SymMat2 compose_sym2(double angle, double v_along, double v_across);

struct EllipseGeom {
  Vec2 center;
  double angle = 0.0;             // direction of the major semi-axis, [0, pi)
  std::array<double, 2> semi_axes{};  // major first
};

double dist_g(const Vec2& x, const Generator& g);

enum class DistanceKind { Voronoi, Laguerre, MultiplicativelyWeighted };

/// The classical special cases of dist_g. Laguerre reads the weight as r^2;
/// MultiplicativelyWeighted requires M = (1/sigma^2) I and returns |x - p| / sigma.
double special_distance(const Vec2& x, const Generator& g, DistanceKind kind);

/// Contour (x - p)^T M (x - p) - w = 1 when `scaled`, else the unweighted
/// contour (x - p)^T M (x - p) = 1. Throws NonRenderable if scaled and 1 + w <= 0.
EllipseGeom generator_to_ellipse(const Generator& g, bool scaled = true);

/// Throws InvalidInput when M is not positive definite or ids repeat.
void validate_scene(const Scene& scene);

/// argmin of dist_g; ties go to the lowest index.
int nearest_generator(const Scene& scene, const Vec2& x);

}  // namespace gbpd
