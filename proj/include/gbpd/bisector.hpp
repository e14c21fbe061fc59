/* Apache License, Version 2.0 */

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "gbpd/core.hpp"

namespace gbpd {

/// Local coordinates x' with x = origin + scale * x'. Conic routines work in a
/// frame chosen near the data so that coefficients stay well balanced.
struct Frame {
  Vec2 origin;
  double scale = 1.0;

  Vec2 to_local(const Vec2& x) const { return (x - origin) / scale; }
  Vec2 to_world(const Vec2& x) const { return origin + x * scale; }
};

/// a11 x^2 + 2 a12 xy + a22 y^2 + b11 x + b12 y + c = 0
struct ConicImplicit {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
  double b11 = 0.0, b12 = 0.0;
  double c = 0.0;

  double eval(const Vec2& q) const {
    return a11 * q.x * q.x + 2.0 * a12 * q.x * q.y + a22 * q.y * q.y + b11 * q.x + b12 * q.y + c;
  }
  Vec2 gradient(const Vec2& q) const {
    return {2.0 * a11 * q.x + 2.0 * a12 * q.y + b11, 2.0 * a12 * q.x + 2.0 * a22 * q.y + b12};
  }
  /// Sum of the absolute values of the individual terms at q; the natural
  /// denominator for a relative residual.
  double term_magnitude(const Vec2& q) const;
  double residual(const Vec2& q) const;  // |eval| / term_magnitude

  ConicImplicit negated() const { return {-a11, -a12, -a22, -b11, -b12, -c}; }
  /// Same zero set expressed in local coordinates of `f`, rescaled so that the
  /// largest coefficient has magnitude one.
  ConicImplicit in_frame(const Frame& f) const;
  double max_coefficient() const;
  bool operator==(const ConicImplicit&) const = default;
};

enum class ConicClass {
  Ellipse,
  Hyperbola,
  Parabola,
  SingleLine,
  TwoParallelLines,
  TwoIntersectingLines,
  Empty,
  WholePlane,
};

std::string_view to_string(ConicClass c);

/// A homogeneous coordinate written as a cos(alpha) + b sin(alpha) + c.
struct TrigRow {
  double a = 0.0, b = 0.0, c = 0.0;
  double at(double ca, double sa) const { return a * ca + b * sa + c; }
  double derivative(double ca, double sa) const { return -a * sa + b * ca; }
};

/// Rational quadratic parametrization x(t) = xh(t)/uh(t), y(t) = yh(t)/uh(t).
/// Polynomials are stored as {c0, c1, c2} for c0 + c1 t + c2 t^2. The same
/// curve is also kept in angle form with t = tan(alpha / 2), where t = +-inf
/// corresponds to alpha = pi. The angle form is chosen so that alpha = pi is
/// never singular, which makes the parameter domain a circle with a finite
/// set of singular angles.
struct ParametrizedConic {
  ConicClass cls = ConicClass::Ellipse;
  std::array<double, 3> xh{}, yh{}, uh{};
  std::vector<double> singular_params;  // real roots of uh, sorted

  std::array<TrigRow, 3> rows{};         // x, y, u
  std::vector<double> singular_angles;   // in [-pi, pi), sorted
  std::array<double, 9> inverse{};       // inverse of the row matrix, row-major

  Vec2 point_at_angle(double alpha) const;
  Vec2 derivative_at_angle(double alpha) const;
  double denominator_at_angle(double alpha) const;
  /// Projective inverse: the angle whose image is closest to q.
  double angle_of_point(const Vec2& q) const;
};

/// Line through `point` with unit direction `dir`.
struct Line {
  Vec2 point;
  Vec2 dir;
};

/// A plane curve evaluated by a single real parameter: either the angle form
/// of a conic or a straight line point + u * dir.
class Curve {
 public:
  static Curve conic(const std::array<TrigRow, 3>& rows);
  static Curve line(const Vec2& point, const Vec2& dir);

  bool straight() const { return straight_; }
  Vec2 point(double u) const;
  Vec2 derivative(double u) const;

 private:
  bool straight_ = true;
  std::array<TrigRow, 3> rows_{};
  Vec2 p_, d_;
};

/// Connected pieces of a bisector's zero set. Loops and arcs are parametrized
/// by angle, lines by arc length. Loop: [lo, lo + 2 pi) circular. Arc: open
/// (lo, hi) between singular angles. Line: (-inf, inf).
enum class ComponentKind { Loop, Arc, Line };

struct Component {
  ComponentKind kind = ComponentKind::Line;
  int line = -1;
  double lo = 0.0;
  double hi = 0.0;
};

struct ConicShape {
  ConicClass cls = ConicClass::Empty;
  std::optional<ParametrizedConic> conic;
  std::vector<Line> lines;
};

struct Bisector {
  int i = 0, j = 0;  // generator indices, i < j
  ConicImplicit implicit;
  Frame frame;
  ConicShape shape;

  ConicClass cls() const { return shape.cls; }
  std::vector<Component> components() const;
  Curve curve(const Component& c) const;
  /// Position of `q` on a component: the parameter u, or nullopt if q is not
  /// within `tol` (world distance) of it.
  std::optional<double> locate(const Component& c, const Vec2& q, double tol) const;
};

struct BisectorTolerances {
  double rank = 1e-10;   // relative eigenvalue threshold for degeneracy
};

ConicImplicit bisector_implicit(const Generator& gi, const Generator& gj);

/// Diagonalizes the homogeneous matrix of `c` and returns its rational
/// parametrization or its real lines.
ConicShape classify_and_parametrize(const ConicImplicit& c, double eps_rank = 1e-10, const Frame& frame = {});

/// Frame centred between the two generators, scaled by their separation and size.
Frame pair_frame(const Generator& gi, const Generator& gj);

Bisector make_bisector(const Scene& scene, int i, int j, const BisectorTolerances& tol = {});

/// x(t), y(t); throws SingularParameter when |uh(t)| <= eps_den (relative).
Vec2 eval_param(const ParametrizedConic& p, double t, double eps_den = 1e-12);

/// All t with |eval_param(t) - v| <= eps, found from v1 uh(t) - xh(t) = 0 and
/// cross-checked with the y equation. The point reached as t -> +-inf is
/// reported as +infinity. Throws NoSolution if v is not on the curve.
std::vector<double> param_of_point(const ParametrizedConic& p, const Vec2& v, double eps);

/// Homogeneous 3x3 matrix (row-major) with the linear terms halved.
std::array<double, 9> homogeneous_matrix(const ConicImplicit& c);

}  // namespace gbpd
