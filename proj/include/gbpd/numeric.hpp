/* Apache License, Version 2.0 */

#pragma once

#include <functional>
#include <vector>

namespace gbpd::numeric {

/// Real roots of c0 + c1 x + c2 x^2, ascending. Degrades to the linear case
/// when |c2| is negligible against the other coefficients. A discriminant that
/// is negative by less than `tangent_tol` (relative) is treated as a double root.
std::vector<double> solve_quadratic(double c0, double c1, double c2, double tangent_tol = 0.0);

/// Real roots of c0 + c1 x + c2 x^2 + c3 x^3, ascending, Newton-polished.
std::vector<double> solve_cubic(double c0, double c1, double c2, double c3);

/// Angles in [-pi, pi) with a cos(t) + b sin(t) + c = 0. When |c| exceeds the
/// amplitude by less than `tangent_tol` (relative), the tangent angle is returned.
std::vector<double> solve_trig(double a, double b, double c, double tangent_tol = 0.0);

/// Adaptive Gauss-Kronrod (15 point) integral of f over [a, b]. The panel with
/// the largest error estimate is bisected until the summed estimate fits in
/// max(tol |I|, abs_tol), or 2000 panels are in use.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                 double abs_tol = 0.0);

/// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

}  // namespace gbpd::numeric
