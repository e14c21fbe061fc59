/* Apache License, Version 2.0 */

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gbpd/bisector.hpp"
#include "gbpd/core.hpp"

namespace gbpd {

struct IntersectOptions {
  Frame frame;             // working frame; choose it near the expected points
  double eps_rank = 1e-10;
  double eps_res = 1e-8;   // relative residual for accepting a point
  double dedup = -1.0;     // world distance; negative means 1e-6 * frame.scale
};

/// Real intersection points of two conics, deduplicated and sorted by (x, y).
/// Degenerate inputs are split into lines and intersected directly; otherwise
/// a real degenerate member of the pencil C1 + lambda C2 is split into lines
/// which are then intersected with C1. Throws OverlappingConics when the zero
/// sets share a curve.
std::vector<Vec2> conic_conic_intersections(const ConicImplicit& c1, const ConicImplicit& c2,
                                            const IntersectOptions& opt = {});

struct Vertex {
  Vec2 pos;
  std::vector<int> gens;                          // generator indices, ascending
  std::map<std::pair<int, int>, double> param_on;  // bisector (i, j) -> t
};

/// True when no generator is closer to v than the triple (within eps_vert,
/// relative to 1 + |d|).
bool is_gbpd_vertex(const Vec2& v, const std::array<int, 3>& triple, const Scene& scene, double eps_vert = 1e-9);

/// Newton iterations on d_i - d_j = 0, d_i - d_k = 0 starting from v.
Vec2 polish_vertex(const Vec2& v, const Generator& gi, const Generator& gj, const Generator& gk);

}  // namespace gbpd
