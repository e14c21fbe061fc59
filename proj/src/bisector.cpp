/* Apache License, Version 2.0 */

#include "gbpd/bisector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gbpd/error.hpp"
#include "gbpd/numeric.hpp"

namespace gbpd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Lines farther than this (in frame units) from the frame origin are taken to
// be the line at infinity.
constexpr double kInfiniteLine = 1e9;

std::optional<Line> line_from_local(double l1, double l2, double l3, const Frame& f) {
  const double n = std::hypot(l1, l2);
  if (n == 0.0 || n * kInfiniteLine <= std::abs(l3)) return std::nullopt;
  const Vec2 normal{l1 / n, l2 / n};
  const Vec2 foot = normal * (-l3 / n);
  return Line{f.to_world(foot), perp(normal)};
}

std::array<double, 3> poly_from_row(const TrigRow& r) {
  // cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2), 1 = (1 + t^2)/(1 + t^2)
  return {r.a + r.c, 2.0 * r.b, r.c - r.a};
}

double poly_eval(const std::array<double, 3>& p, double t) { return p[0] + t * (p[1] + t * p[2]); }

double poly_scale(const std::array<double, 3>& p, double t) {
  return std::abs(p[0]) + std::abs(p[1] * t) + std::abs(p[2] * t * t);
}

ConicShape parametrize_rank3(const Eigen::Vector3d& values, const Eigen::Matrix3d& vectors,
                             const ConicImplicit& local, const Frame& frame) {
  ConicShape shape;
  int positives = 0;
  for (int k = 0; k < 3; ++k) positives += values[k] > 0.0 ? 1 : 0;
  if (positives == 0 || positives == 3) {
    shape.cls = ConicClass::Empty;
    return shape;
  }
  // Canonical signs (+, +, -): negate globally when only one eigenvalue is positive.
  const double sign = positives == 2 ? 1.0 : -1.0;
  std::array<int, 2> pos{};
  int neg = -1;
  int np = 0;
  for (int k = 0; k < 3; ++k) {
    if (sign * values[k] > 0.0) {
      pos[np++] = k;
    } else {
      neg = k;
    }
  }
  const double mu1 = 1.0 / std::sqrt(std::abs(values[pos[0]]));
  const double mu2 = 1.0 / std::sqrt(std::abs(values[pos[1]]));
  const double mu3 = 1.0 / std::sqrt(std::abs(values[neg]));

  // Local homogeneous point: mu1 cos(g) e1 + mu2 sin(g) e2 + mu3 e3.
  std::array<TrigRow, 3> local_rows;
  for (int r = 0; r < 3; ++r)
    local_rows[r] = {mu1 * vectors(r, pos[0]), mu2 * vectors(r, pos[1]), mu3 * vectors(r, neg)};

  // Rotate g = alpha + phi so that alpha = pi (t = inf) lands where |u| is largest.
  const TrigRow& lu = local_rows[2];
  const double amp = std::hypot(lu.a, lu.b);
  double phi = 0.0;
  if (amp > 1e-12 * std::abs(lu.c)) {
    double best = std::atan2(lu.b, lu.a);
    if (lu.c < 0.0) best += kPi;
    phi = best - kPi;
  }
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  for (TrigRow& r : local_rows) r = {r.a * cp + r.b * sp, r.b * cp - r.a * sp, r.c};

  // Back to world coordinates: xh = s xh' + ox uh', yh = s yh' + oy uh'.
  const TrigRow& u = local_rows[2];
  std::array<TrigRow, 3> rows{
      TrigRow{frame.scale * local_rows[0].a + frame.origin.x * u.a, frame.scale * local_rows[0].b + frame.origin.x * u.b,
              frame.scale * local_rows[0].c + frame.origin.x * u.c},
      TrigRow{frame.scale * local_rows[1].a + frame.origin.y * u.a, frame.scale * local_rows[1].b + frame.origin.y * u.b,
              frame.scale * local_rows[1].c + frame.origin.y * u.c},
      u};
  double norm_u = std::max({std::abs(u.a), std::abs(u.b), std::abs(u.c)});
  if (u.c - u.a < 0.0) norm_u = -norm_u;
  for (TrigRow& r : rows) r = {r.a / norm_u, r.b / norm_u, r.c / norm_u};

  ParametrizedConic pc;
  pc.rows = rows;
  pc.xh = poly_from_row(rows[0]);
  pc.yh = poly_from_row(rows[1]);
  pc.uh = poly_from_row(rows[2]);

  const double qa = std::max({std::abs(local.a11), std::abs(local.a12), std::abs(local.a22)});
  const double disc = (local.a12 * local.a12 - local.a11 * local.a22) / (qa * qa);
  if (std::abs(disc) <= 1e-10) {
    pc.cls = ConicClass::Parabola;
  } else {
    pc.cls = disc < 0.0 ? ConicClass::Ellipse : ConicClass::Hyperbola;
  }

  const TrigRow& wu = rows[2];
  if (pc.cls == ConicClass::Parabola) {
    // Double root of u: the tangent angle, forced even if rounding splits it.
    const double phase = std::atan2(wu.b, wu.a);
    pc.singular_angles = {numeric::wrap_angle(wu.c > 0.0 ? phase + kPi : phase)};
  } else if (pc.cls == ConicClass::Hyperbola) {
    pc.singular_angles = numeric::solve_trig(wu.a, wu.b, wu.c, 1e-9);
    if (pc.singular_angles.size() == 1) pc.cls = ConicClass::Parabola;
  }
  for (double a : pc.singular_angles) pc.singular_params.push_back(std::tan(0.5 * a));
  std::sort(pc.singular_params.begin(), pc.singular_params.end());

  Eigen::Matrix3d rm;
  for (int r = 0; r < 3; ++r) rm.row(r) << rows[r].a, rows[r].b, rows[r].c;
  const Eigen::Matrix3d inv = rm.inverse();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) pc.inverse[3 * r + c] = inv(r, c);

  shape.cls = pc.cls;
  shape.conic = pc;
  return shape;
}

}  // namespace

double ConicImplicit::term_magnitude(const Vec2& q) const {
  return std::abs(a11 * q.x * q.x) + 2.0 * std::abs(a12 * q.x * q.y) + std::abs(a22 * q.y * q.y) +
         std::abs(b11 * q.x) + std::abs(b12 * q.y) + std::abs(c);
}

double ConicImplicit::residual(const Vec2& q) const {
  const double mag = term_magnitude(q);
  return mag == 0.0 ? 0.0 : std::abs(eval(q)) / mag;
}

double ConicImplicit::max_coefficient() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a22), std::abs(b11), std::abs(b12), std::abs(c)});
}

ConicImplicit ConicImplicit::in_frame(const Frame& f) const {
  const double s = f.scale;
  const Vec2 o = f.origin;
  ConicImplicit out;
  out.a11 = s * s * a11;
  out.a12 = s * s * a12;
  out.a22 = s * s * a22;
  out.b11 = s * (2.0 * (a11 * o.x + a12 * o.y) + b11);
  out.b12 = s * (2.0 * (a12 * o.x + a22 * o.y) + b12);
  out.c = eval(o);
  const double m = out.max_coefficient();
  if (m == 0.0) return out;
  return {out.a11 / m, out.a12 / m, out.a22 / m, out.b11 / m, out.b12 / m, out.c / m};
}

std::string_view to_string(ConicClass c) {
  switch (c) {
    case ConicClass::Ellipse: return "ellipse";
    case ConicClass::Hyperbola: return "hyperbola";
    case ConicClass::Parabola: return "parabola";
    case ConicClass::SingleLine: return "single_line";
    case ConicClass::TwoParallelLines: return "two_parallel_lines";
    case ConicClass::TwoIntersectingLines: return "two_intersecting_lines";
    case ConicClass::Empty: return "empty";
    case ConicClass::WholePlane: return "whole_plane";
  }
  return "unknown";
}

Vec2 ParametrizedConic::point_at_angle(double alpha) const {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double w = rows[2].at(ca, sa);
  return {rows[0].at(ca, sa) / w, rows[1].at(ca, sa) / w};
}

Vec2 ParametrizedConic::derivative_at_angle(double alpha) const {
  return Curve::conic(rows).derivative(alpha);
}

double ParametrizedConic::denominator_at_angle(double alpha) const {
  return rows[2].at(std::cos(alpha), std::sin(alpha));
}

double ParametrizedConic::angle_of_point(const Vec2& q) const {
  const std::array<double, 3> h{q.x, q.y, 1.0};
  std::array<double, 3> z{};
  for (int r = 0; r < 3; ++r) z[r] = inverse[3 * r] * h[0] + inverse[3 * r + 1] * h[1] + inverse[3 * r + 2] * h[2];
  const double s = z[2] < 0.0 ? -1.0 : 1.0;
  return numeric::wrap_angle(std::atan2(s * z[1], s * z[0]));
}

Curve Curve::conic(const std::array<TrigRow, 3>& rows) {
  Curve c;
  c.straight_ = false;
  c.rows_ = rows;
  return c;
}

Curve Curve::line(const Vec2& point, const Vec2& dir) {
  Curve c;
  c.straight_ = true;
  c.p_ = point;
  c.d_ = dir;
  return c;
}

Vec2 Curve::point(double u) const {
  if (straight_) return p_ + d_ * u;
  const double ca = std::cos(u);
  const double sa = std::sin(u);
  const double w = rows_[2].at(ca, sa);
  return {rows_[0].at(ca, sa) / w, rows_[1].at(ca, sa) / w};
}

Vec2 Curve::derivative(double u) const {
  if (straight_) return d_;
  const double ca = std::cos(u);
  const double sa = std::sin(u);
  const double w = rows_[2].at(ca, sa);
  const double dw = rows_[2].derivative(ca, sa);
  const double x = rows_[0].at(ca, sa);
  const double y = rows_[1].at(ca, sa);
  return {(rows_[0].derivative(ca, sa) * w - x * dw) / (w * w), (rows_[1].derivative(ca, sa) * w - y * dw) / (w * w)};
}

std::array<double, 9> homogeneous_matrix(const ConicImplicit& c) {
  return {c.a11, c.a12, 0.5 * c.b11, c.a12, c.a22, 0.5 * c.b12, 0.5 * c.b11, 0.5 * c.b12, c.c};
}

ConicImplicit bisector_implicit(const Generator& gi, const Generator& gj) {
  const SymMat2 a = gi.m - gj.m;
  const Vec2 mi_pi = gi.m * gi.p;
  const Vec2 mj_pj = gj.m * gj.p;
  ConicImplicit out;
  out.a11 = a.m11;
  out.a12 = a.m12;
  out.a22 = a.m22;
  out.b11 = -2.0 * (mi_pi.x - mj_pj.x);
  out.b12 = -2.0 * (mi_pi.y - mj_pj.y);
  out.c = dot(gi.p, mi_pi) - dot(gj.p, mj_pj) - gi.w + gj.w;
  return out;
}

ConicShape classify_and_parametrize(const ConicImplicit& c, double eps_rank, const Frame& frame) {
  ConicShape shape;
  if (c.max_coefficient() == 0.0) {
    shape.cls = ConicClass::WholePlane;
    return shape;
  }
  if (c.a11 == 0.0 && c.a12 == 0.0 && c.a22 == 0.0) {
    // Purely linear: b . x + c = 0 (the line at infinity is dropped).
    const Vec2 n{c.b11, c.b12};
    const double nn = dot(n, n);
    if (nn == 0.0) {
      shape.cls = ConicClass::Empty;
      return shape;
    }
    const Vec2 foot = frame.origin - n * ((dot(n, frame.origin) + c.c) / nn);
    shape.cls = ConicClass::SingleLine;
    shape.lines.push_back({foot, perp(n) / std::sqrt(nn)});
    return shape;
  }

  const ConicImplicit local = c.in_frame(frame);
  const auto h = homogeneous_matrix(local);
  Eigen::Matrix3d d;
  d << h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d);
  const Eigen::Vector3d values = es.eigenvalues();
  const Eigen::Matrix3d vectors = es.eigenvectors();
  const double vmax = values.cwiseAbs().maxCoeff();
  std::array<bool, 3> zero{};
  int rank = 0;
  for (int k = 0; k < 3; ++k) {
    zero[k] = std::abs(values[k]) <= eps_rank * vmax;
    rank += zero[k] ? 0 : 1;
  }
  if (rank == 3) return parametrize_rank3(values, vectors, local, frame);

  std::vector<Eigen::Vector3d> homog;
  if (rank == 1) {
    int k = 0;
    while (zero[k]) ++k;
    homog.push_back(vectors.col(k));
  } else {
    int ka = -1, kb = -1;
    for (int k = 0; k < 3; ++k) {
      if (zero[k]) continue;
      if (ka < 0) {
        ka = k;
      } else {
        kb = k;
      }
    }
    if (values[ka] * values[kb] > 0.0) {
      // Complex conjugate lines: the real zero set is at most one point.
      shape.cls = ConicClass::Empty;
      return shape;
    }
    if (values[ka] < 0.0) std::swap(ka, kb);
    // lambda_a e_a e_a^T - |lambda_b| e_b e_b^T = sym((s_a e_a + s_b e_b)(s_a e_a - s_b e_b)^T)
    const double sa = std::sqrt(values[ka]);
    const double sb = std::sqrt(-values[kb]);
    homog.push_back(sa * vectors.col(ka) + sb * vectors.col(kb));
    homog.push_back(sa * vectors.col(ka) - sb * vectors.col(kb));
  }
  for (const auto& l : homog)
    if (auto line = line_from_local(l[0], l[1], l[2], frame)) shape.lines.push_back(*line);

  if (shape.lines.empty()) {
    shape.cls = ConicClass::Empty;
  } else if (shape.lines.size() == 1) {
    shape.cls = ConicClass::SingleLine;
  } else if (std::abs(cross(shape.lines[0].dir, shape.lines[1].dir)) <= 1e-10) {
    shape.cls = ConicClass::TwoParallelLines;
  } else {
    shape.cls = ConicClass::TwoIntersectingLines;
  }
  return shape;
}

Frame pair_frame(const Generator& gi, const Generator& gj) {
  const auto major = [](const Generator& g) { return 1.0 / std::sqrt(eigen_sym2(g.m).values[1]); };
  Frame f;
  f.origin = (gi.p + gj.p) * 0.5;
  f.scale = std::max({norm(gi.p - gj.p), major(gi), major(gj)});
  if (!(f.scale > 0.0)) f.scale = 1.0;
  return f;
}

Bisector make_bisector(const Scene& scene, int i, int j, const BisectorTolerances& tol) {
  Bisector b;
  b.i = i;
  b.j = j;
  b.implicit = bisector_implicit(scene[i], scene[j]);
  b.frame = pair_frame(scene[i], scene[j]);
  b.shape = classify_and_parametrize(b.implicit, tol.rank, b.frame);
  return b;
}

std::vector<Component> Bisector::components() const {
  std::vector<Component> out;
  if (shape.conic) {
    const ParametrizedConic& pc = *shape.conic;
    const auto& s = pc.singular_angles;
    if (s.empty()) {
      out.push_back({ComponentKind::Loop, -1, -kPi, kPi});
    } else if (s.size() == 1) {
      out.push_back({ComponentKind::Arc, -1, s[0], s[0] + kTwoPi});
    } else {
      out.push_back({ComponentKind::Arc, -1, s[0], s[1]});
      out.push_back({ComponentKind::Arc, -1, s[1], s[0] + kTwoPi});
    }
    return out;
  }
  for (int k = 0; k < static_cast<int>(shape.lines.size()); ++k)
    out.push_back({ComponentKind::Line, k, -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()});
  return out;
}

Curve Bisector::curve(const Component& c) const {
  if (c.kind == ComponentKind::Line) return Curve::line(shape.lines[c.line].point, shape.lines[c.line].dir);
  return Curve::conic(shape.conic->rows);
}

std::optional<double> Bisector::locate(const Component& c, const Vec2& q, double tol) const {
  if (c.kind == ComponentKind::Line) {
    const Line& l = shape.lines[c.line];
    const Vec2 d = q - l.point;
    if (std::abs(cross(l.dir, d)) > tol) return std::nullopt;
    return dot(l.dir, d);
  }
  const ParametrizedConic& pc = *shape.conic;
  const double alpha = pc.angle_of_point(q);
  if (!(norm(pc.point_at_angle(alpha) - q) <= tol)) return std::nullopt;
  double u = c.lo + std::fmod(alpha - c.lo + 2.0 * kTwoPi, kTwoPi);
  if (u >= c.lo + kTwoPi) u -= kTwoPi;
  if (c.kind == ComponentKind::Arc && !(u > c.lo && u < c.hi)) return std::nullopt;
  return u;
}

Vec2 eval_param(const ParametrizedConic& p, double t, double eps_den) {
  if (std::isinf(t)) {
    if (std::abs(p.uh[2]) <= eps_den * (std::abs(p.uh[0]) + std::abs(p.uh[1]) + std::abs(p.uh[2])))
      throw Error(ErrorKind::SingularParameter, "parametrization is singular at t = infinity");
    return {p.xh[2] / p.uh[2], p.yh[2] / p.uh[2]};
  }
  const double u = poly_eval(p.uh, t);
  if (std::abs(u) <= eps_den * poly_scale(p.uh, t))
    throw Error(ErrorKind::SingularParameter, "parametrization is singular at t = " + std::to_string(t));
  return {poly_eval(p.xh, t) / u, poly_eval(p.yh, t) / u};
}

std::vector<double> param_of_point(const ParametrizedConic& p, const Vec2& v, double eps) {
  std::vector<double> candidates;
  for (const auto* num : {&p.xh, &p.yh}) {
    const double coord = num == &p.xh ? v.x : v.y;
    const auto roots = numeric::solve_quadratic(coord * p.uh[0] - (*num)[0], coord * p.uh[1] - (*num)[1],
                                                coord * p.uh[2] - (*num)[2], 1e-9);
    candidates.insert(candidates.end(), roots.begin(), roots.end());
  }
  candidates.push_back(std::tan(0.5 * p.angle_of_point(v)));
  candidates.push_back(std::numeric_limits<double>::infinity());

  std::vector<std::pair<double, double>> hits;  // (distance, t)
  for (double t : candidates) {
    Vec2 q;
    try {
      q = eval_param(p, t);
    } catch (const Error&) {
      continue;
    }
    const double d = norm(q - v);
    if (d <= eps) hits.emplace_back(d, t);
  }
  if (hits.empty()) throw Error(ErrorKind::NoSolution, "point is not on the conic");
  std::sort(hits.begin(), hits.end());
  std::vector<double> out;
  for (const auto& [d, t] : hits) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](double o) {
      if (std::isinf(o) || std::isinf(t)) return std::isinf(o) && std::isinf(t);
      return std::abs(o - t) <= 1e-6 * (1.0 + std::abs(t));
    });
    if (!dup) out.push_back(t);
  }
  return out;
}

}  // namespace gbpd
