/* Apache License, Version 2.0 */

#include "gbpd/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <queue>

namespace gbpd::numeric {

std::vector<double> solve_quadratic(double c0, double c1, double c2, double tangent_tol) {
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
  if (scale == 0.0) return {};
  if (std::abs(c2) <= 1e-14 * scale) {
    if (std::abs(c1) <= 1e-14 * scale) return {};
    return {-c0 / c1};
  }
  double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) {
    if (disc >= -tangent_tol * (c1 * c1 + 4.0 * std::abs(c2 * c0))) {
      disc = 0.0;
    } else {
      return {};
    }
  }
  if (disc == 0.0) return {-c1 / (2.0 * c2)};
  // Avoids cancellation between -c1 and sqrt(disc).
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  double r1 = q / c2;
  double r2 = q != 0.0 ? c0 / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

namespace {

double polish_cubic_root(double x, double c0, double c1, double c2, double c3) {
  for (int it = 0; it < 6; ++it) {
    const double f = ((c3 * x + c2) * x + c1) * x + c0;
    const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
    if (df == 0.0) break;
    const double step = f / df;
    const double next = x - step;
    const double fn = ((c3 * next + c2) * next + c1) * next + c0;
    if (!(std::abs(fn) < std::abs(f))) break;
    x = next;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::vector<double> solve_cubic(double c0, double c1, double c2, double c3) {
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), std::abs(c3)});
  if (scale == 0.0) return {};
  if (std::abs(c3) <= 1e-14 * scale) return solve_quadratic(c0, c1, c2);

  // Depressed cubic x = y - a/3 for monic x^3 + a x^2 + b x + c.
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  std::vector<double> roots;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + s);
    const double v = std::cbrt(-q / 2.0 - s);
    roots.push_back(u + v + shift);
  } else if (p == 0.0) {
    roots.push_back(shift);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift);
  }
  for (double& r : roots) r = polish_cubic_root(r, c0, c1, c2, c3);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> solve_trig(double a, double b, double c, double tangent_tol) {
  const double amp = std::hypot(a, b);
  if (amp == 0.0) return {};
  const double phase = std::atan2(b, a);
  double ratio = -c / amp;
  if (std::abs(ratio) > 1.0) {
    if (std::abs(ratio) - 1.0 <= tangent_tol) {
      ratio = std::copysign(1.0, ratio);
    } else {
      return {};
    }
  }
  const double delta = std::acos(ratio);
  if (delta == 0.0 || delta == std::numbers::pi) return {wrap_angle(phase + delta)};
  std::vector<double> out{wrap_angle(phase - delta), wrap_angle(phase + delta)};
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

double panel(const std::function<double(double)>& f, double a, double b, double* error) {
  return Kronrod::integrate(f, a, b, 0, 0.0, error);
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
  Panel p{a, b, 0.0, 0.0};
  p.value = panel(f, a, b, &p.error);
  return p;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol, double abs_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol, abs_tol);
  // Global refinement: always split the panel with the largest error
  // estimate. The panel cap bounds the work when the estimates stall at the
  // rounding floor.
  constexpr std::size_t kMaxPanels = 2000;
  std::priority_queue<Panel> heap;
  heap.push(make_panel(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  while (heap.size() < kMaxPanels) {
    if (error <= std::max(tol * std::abs(value), abs_tol)) break;
    const Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) break;
    heap.pop();
    const Panel left = make_panel(f, worst.a, m);
    const Panel right = make_panel(f, m, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum in position order so the result does not depend on update history.
  std::vector<Panel> panels;
  for (; !heap.empty(); heap.pop()) panels.push_back(heap.top());
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sum = 0.0;
  for (const Panel& p : panels) sum += p.value;
  return sum;
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r < 0.0) r += two_pi;
  r -= std::numbers::pi;
  if (r >= std::numbers::pi) r -= two_pi;
  return r;
}

}  // namespace gbpd::numeric
