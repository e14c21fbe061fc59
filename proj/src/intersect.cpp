/* Apache License, Version 2.0 */

#include "gbpd/intersect.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "gbpd/error.hpp"
#include "gbpd/numeric.hpp"

namespace gbpd {

namespace {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

Mat3 to_mat(const ConicImplicit& c) {
  const auto h = homogeneous_matrix(c);
  Mat3 m;
  m << h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8];
  return m;
}

Mat3 adjugate(const Mat3& m) {
  Mat3 a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return a;
}

// Splitting of a (numerically) degenerate symmetric matrix into its lines.
struct Split {
  std::vector<Vec3> lines;    // real lines, homogeneous
  std::optional<Vec3> point;  // real point of a complex-conjugate pair
  bool real_lines = false;
  double margin = 0.0;        // |middle eigenvalue| / |largest|
};

Split split_degenerate(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  const Vec3 values = es.eigenvalues();
  const Mat3 vectors = es.eigenvectors();
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(values[a]) > std::abs(values[b]); });
  const int k_max = order[0];
  const int k_mid = order[1];
  const int k_min = order[2];
  Split s;
  const double vmax = std::abs(values[k_max]);
  if (vmax == 0.0) return s;
  s.margin = std::abs(values[k_mid]) / vmax;
  if (s.margin <= 1e-10) {
    s.lines.push_back(vectors.col(k_max));
    s.real_lines = true;
    return s;
  }
  if (values[k_max] * values[k_mid] > 0.0) {
    s.point = vectors.col(k_min);
    return s;
  }
  int kp = values[k_max] > 0.0 ? k_max : k_mid;
  int kn = values[k_max] > 0.0 ? k_mid : k_max;
  const double sp = std::sqrt(values[kp]);
  const double sn = std::sqrt(-values[kn]);
  s.lines.push_back(sp * vectors.col(kp) + sn * vectors.col(kn));
  s.lines.push_back(sp * vectors.col(kp) - sn * vectors.col(kn));
  s.real_lines = true;
  return s;
}

bool is_degenerate(const Mat3& m, double eps_rank) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m, Eigen::EigenvaluesOnly);
  const Vec3 v = es.eigenvalues().cwiseAbs();
  return v.minCoeff() <= eps_rank * v.maxCoeff();
}

void intersect_line(const Vec3& l, const ConicImplicit& c, std::vector<Vec2>& out) {
  const double n = std::hypot(l[0], l[1]);
  if (n == 0.0 || n * 1e9 <= std::abs(l[2])) return;  // line at infinity
  const Vec2 normal{l[0] / n, l[1] / n};
  const Vec2 p0 = normal * (-l[2] / n);
  const Vec2 d = perp(normal);
  const double qa = c.a11 * d.x * d.x + 2.0 * c.a12 * d.x * d.y + c.a22 * d.y * d.y;
  const double qb = dot(c.gradient(p0), d);
  const double qc = c.eval(p0);
  const double ref = c.max_coefficient() * (1.0 + dot(p0, p0));
  if (std::max({std::abs(qa), std::abs(qb), std::abs(qc)}) <= 1e-11 * ref)
    throw Error(ErrorKind::OverlappingConics, "a line of one conic lies on the other");
  for (double s : numeric::solve_quadratic(qc, qb, qa, 1e-9)) out.push_back(p0 + d * s);
}

void point_candidate(const Vec3& h, std::vector<Vec2>& out) {
  if (h[2] == 0.0) return;
  const Vec2 p{h[0] / h[2], h[1] / h[2]};
  if (std::isfinite(p.x) && std::isfinite(p.y)) out.push_back(p);
}

void candidates_from_split(const Split& s, const ConicImplicit& other, std::vector<Vec2>& out) {
  for (const Vec3& l : s.lines) intersect_line(l, other, out);
  if (s.point) point_candidate(*s.point, out);
}

Vec2 newton_polish(const ConicImplicit& c1, const ConicImplicit& c2, Vec2 x) {
  const auto size = [&](const Vec2& q) { return std::hypot(c1.residual(q), c2.residual(q)); };
  double r = size(x);
  for (int it = 0; it < 8 && r > 0.0; ++it) {
    const Vec2 g1 = c1.gradient(x);
    const Vec2 g2 = c2.gradient(x);
    const double det = cross(g1, g2);
    if (det == 0.0) break;
    const double f1 = c1.eval(x);
    const double f2 = c2.eval(x);
    const Vec2 step{(f1 * g2.y - f2 * g1.y) / det, (g1.x * f2 - g2.x * f1) / det};
    const Vec2 next = x - step;
    const double rn = size(next);
    if (!(rn < r)) break;
    x = next;
    r = rn;
  }
  return x;
}

}  // namespace

std::vector<Vec2> conic_conic_intersections(const ConicImplicit& c1, const ConicImplicit& c2,
                                            const IntersectOptions& opt) {
  const ConicImplicit l1 = c1.in_frame(opt.frame);
  const ConicImplicit l2 = c2.in_frame(opt.frame);
  if (l1.max_coefficient() == 0.0 || l2.max_coefficient() == 0.0)
    throw Error(ErrorKind::OverlappingConics, "conic is the whole plane");

  const auto same = [](const ConicImplicit& a, const ConicImplicit& b) {
    return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a22 - b.a22),
                     std::abs(a.b11 - b.b11), std::abs(a.b12 - b.b12), std::abs(a.c - b.c)}) <= 1e-12;
  };
  if (same(l1, l2) || same(l1, l2.negated()))
    throw Error(ErrorKind::OverlappingConics, "conics coincide");

  const Mat3 m1 = to_mat(l1);
  const Mat3 m2 = to_mat(l2);
  std::vector<Vec2> cand;
  if (is_degenerate(m1, opt.eps_rank)) {
    candidates_from_split(split_degenerate(m1), l2, cand);
  } else if (is_degenerate(m2, opt.eps_rank)) {
    candidates_from_split(split_degenerate(m2), l1, cand);
  } else {
    // det(M1 + lambda M2) = d0 + d1 lambda + d2 lambda^2 + d3 lambda^3
    const double d0 = m1.determinant();
    const double d1 = (adjugate(m1) * m2).trace();
    const double d2 = (m1 * adjugate(m2)).trace();
    const double d3 = m2.determinant();
    std::optional<Split> best;
    for (double lambda : numeric::solve_cubic(d0, d1, d2, d3)) {
      Mat3 member = m1 + lambda * m2;
      const double mm = member.cwiseAbs().maxCoeff();
      if (mm == 0.0) continue;
      member /= mm;
      Split s = split_degenerate(member);
      if (!best || (s.real_lines && !best->real_lines) ||
          (s.real_lines == best->real_lines && s.margin > best->margin)) {
        best = std::move(s);
      }
    }
    if (best) candidates_from_split(*best, l1, cand);
  }

  const double dedup = opt.dedup >= 0.0 ? opt.dedup : 1e-6 * opt.frame.scale;
  std::vector<Vec2> out;
  for (const Vec2& c : cand) {
    const Vec2 local = newton_polish(l1, l2, c);
    if (!(l1.residual(local) <= opt.eps_res && l2.residual(local) <= opt.eps_res)) continue;
    const Vec2 world = opt.frame.to_world(local);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec2& o) { return norm(o - world) <= dedup; });
    if (!dup) out.push_back(world);
  }
  std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return out;
}

bool is_gbpd_vertex(const Vec2& v, const std::array<int, 3>& triple, const Scene& scene, double eps_vert) {
  double d = dist_g(v, scene[triple[0]]);
  d = std::min({d, dist_g(v, scene[triple[1]]), dist_g(v, scene[triple[2]])});
  const double limit = d - eps_vert * (1.0 + std::abs(d));
  for (const Generator& g : scene)
    if (dist_g(v, g) < limit) return false;
  return true;
}

Vec2 polish_vertex(const Vec2& v, const Generator& gi, const Generator& gj, const Generator& gk) {
  const auto grad = [](const Generator& g, const Vec2& x) { return (g.m * (x - g.p)) * 2.0; };
  const auto resid = [&](const Vec2& x) {
    const double di = dist_g(x, gi);
    const double dj = dist_g(x, gj);
    const double dk = dist_g(x, gk);
    return std::hypot(di - dj, di - dk) / (1.0 + std::abs(di));
  };
  Vec2 x = v;
  double r = resid(x);
  for (int it = 0; it < 8 && r > 0.0; ++it) {
    const double di = dist_g(x, gi);
    const Vec2 gi_x = grad(gi, x);
    const Vec2 g1 = gi_x - grad(gj, x);
    const Vec2 g2 = gi_x - grad(gk, x);
    const double f1 = di - dist_g(x, gj);
    const double f2 = di - dist_g(x, gk);
    const double det = cross(g1, g2);
    if (det == 0.0) break;
    const Vec2 step{(f1 * g2.y - f2 * g1.y) / det, (g1.x * f2 - g2.x * f1) / det};
    const Vec2 next = x - step;
    const double rn = resid(next);
    if (!(rn < r)) break;
    x = next;
    r = rn;
  }
  return x;
}

}  // namespace gbpd
