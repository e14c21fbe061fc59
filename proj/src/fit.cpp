/* Apache License, Version 2.0 */

#include "gbpd/fit.hpp"

#include <map>

#include "gbpd/error.hpp"

namespace gbpd {

std::vector<FittedGenerator> fit_generators_from_labels(const LabelImage& img, double scale, double default_weight) {
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidInput, "fit scale must be positive");
  struct Sums {
    long long n = 0;
    double sx = 0.0, sy = 0.0;
  };
  std::map<int, Sums> sums;
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      const int l = img.at(col, row);
      if (l == img.background) continue;
      const Vec2 q = img.pixel_center(col, row);
      Sums& s = sums[l];
      ++s.n;
      s.sx += q.x;
      s.sy += q.y;
    }
  }
  if (sums.empty()) throw Error(ErrorKind::InvalidInput, "label image has no foreground pixels");

  // Second pass about the centroid keeps the covariance well conditioned.
  struct Moments {
    Vec2 c;
    double xx = 0.0, xy = 0.0, yy = 0.0;
  };
  std::map<int, Moments> mom;
  for (const auto& [l, s] : sums) mom[l].c = {s.sx / s.n, s.sy / s.n};
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      const int l = img.at(col, row);
      if (l == img.background) continue;
      Moments& m = mom[l];
      const Vec2 d = img.pixel_center(col, row) - m.c;
      m.xx += d.x * d.x;
      m.xy += d.x * d.y;
      m.yy += d.y * d.y;
    }
  }

  std::vector<FittedGenerator> out;
  for (const auto& [l, s] : sums) {
    const Moments& m = mom[l];
    FittedGenerator f;
    f.pixels = s.n;
    f.gen.id = l;
    f.gen.p = m.c;
    f.gen.w = default_weight;
    const SymMat2 cov{m.xx / s.n, m.xy / s.n, m.yy / s.n};
    const SymEigen2 e = eigen_sym2(cov);
    f.eigenvalues = e.values;
    if (s.n < 3 || !(e.values[1] > 1e-12 * std::max(e.values[0], 1e-300))) {
      f.degenerate = true;
      f.gen.m = SymMat2::identity() * (1.0 / scale);
    } else {
      f.gen.m = compose_sym2(e.angle, 1.0 / (scale * e.values[0]), 1.0 / (scale * e.values[1]));
    }
    out.push_back(f);
  }
  return out;
}

Scene fitted_scene(const std::vector<FittedGenerator>& fits) {
  Scene scene;
  for (const FittedGenerator& f : fits) scene.push_back(f.gen);
  return scene;
}

}  // namespace gbpd
