/* Apache License, Version 2.0 */

#pragma once

#include <utility>
#include <vector>

#include "gbpd/bisector.hpp"
#include "gbpd/core.hpp"
#include "gbpd/intersect.hpp"

namespace gbpd {

struct ToleranceSet {
  double rank = 1e-10;         // relative eigenvalue threshold in bisector / pencil splitting
  double den = 1e-12;          // singular-parameter guard
  double res = 1e-8;           // relative implicit residual for intersection points
  double vert = 1e-9;          // relative distance slack in the vertex test
  double dedup = 1e-6;         // intersection dedup, times the scene diagonal
  double vertex_merge = 1e-8;  // cross-triple vertex merge, times the scene diagonal
  double param_merge = 1e-9;   // split parameters closer than this are one vertex
  double quad = 1e-10;         // quadrature target
};

struct BuildOptions {
  ToleranceSet tol;
  int threads = 1;
};

enum class EndKind { Vertex, Unbounded, Loop };

/// A visible piece of a bisector. `u_a < u_b` in the component's parameter
/// (angle for conics, arc length for lines); `u_b - u_a` may reach 2 pi on
/// loops. `full` marks a whole component (closed ellipse, whole line, whole branch).
struct EdgeSegment {
  int i = 0, j = 0;  // generator indices, i < j
  int component = 0;
  ComponentKind kind = ComponentKind::Line;
  double u_a = 0.0, u_b = 0.0;
  bool full = false;
  EndKind start_kind = EndKind::Unbounded, end_kind = EndKind::Unbounded;
  int start_vertex = -1, end_vertex = -1;

  /// Rational parameter t = tan(u / 2) for conics, t = u for lines.
  double t_a() const;
  double t_b() const;
  /// The conic interval passes through t = +-inf.
  bool wraps() const;
};

struct CellInfo {
  std::vector<int> edges;                    // ascending edge ids
  std::vector<std::vector<int>> components;  // edges grouped by shared endpoints
  bool empty = false;
  int n_neighbors = 0;
  int n_regions = 0;  // connected components of the cell
};

struct DiagramGraph {
  Scene generators;
  std::vector<Bisector> bisectors;  // all pairs i < j, see bisector()
  std::vector<Vertex> vertices;
  std::vector<EdgeSegment> edges;
  std::vector<std::pair<int, int>> adjacency;  // generator indices, i < j
  std::vector<CellInfo> cells;

  const Bisector& bisector(int i, int j) const;
  Curve curve(const EdgeSegment& e) const;
  Vec2 point(const EdgeSegment& e, double u) const { return curve(e).point(u); }
  /// A parameter strictly inside the edge, finite for unbounded lines.
  double representative(const EdgeSegment& e) const;
};

std::size_t pair_index(int i, int j, int n);

/// Scene diagonal used to scale distance tolerances.
double scene_scale(const Scene& scene);

/// True when {i, j} are the two nearest generators at q (no other generator is
/// strictly closer than the mean of d_i and d_j).
bool pair_visible_at(const Vec2& q, int i, int j, const Scene& scene);

/// A sorted split point on a component: parameter and vertex id.
struct SplitPoint {
  double u = 0.0;
  int vertex = -1;
};

/// Visible intervals of one bisector component, given its vertex parameters.
std::vector<EdgeSegment> visible_segments(const Bisector& b, int component, const std::vector<SplitPoint>& splits,
                                          const Scene& scene);

/// Full construction: vertices from all generator triples, visible bisector
/// intervals between them, adjacency, and per-cell summaries.
DiagramGraph build_diagram(const Scene& scene, const BuildOptions& opt = {});

/// Fills cells (edges, components, empty flag, neighbor and region counts) from
/// the generators, vertices and edges already in `g`.
void assemble_cells(DiagramGraph& g);

}  // namespace gbpd
