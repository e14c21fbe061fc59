/* Apache License, Version 2.0 */

#include "gbpd/clip.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "gbpd/diagram.hpp"
#include "gbpd/numeric.hpp"

namespace gbpd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 out_tangent(const PlanarPieces& pp, const OrientedPiece& op) {
  const Piece& p = pp.pieces[op.piece];
  return op.reversed ? -p.curve.derivative(p.u1) : p.curve.derivative(p.u0);
}

Vec2 in_tangent(const PlanarPieces& pp, const OrientedPiece& op) {
  const Piece& p = pp.pieces[op.piece];
  return op.reversed ? -p.curve.derivative(p.u0) : p.curve.derivative(p.u1);
}

int start_node(const PlanarPieces& pp, const OrientedPiece& op) {
  const Piece& p = pp.pieces[op.piece];
  return op.reversed ? p.node1 : p.node0;
}

int end_node(const PlanarPieces& pp, const OrientedPiece& op) {
  const Piece& p = pp.pieces[op.piece];
  return op.reversed ? p.node0 : p.node1;
}

double sampled_area(const PlanarPieces& pp, const Loop& loop) {
  constexpr int kSamples = 16;
  double area = 0.0;
  Vec2 first{}, prev{};
  bool have = false;
  for (const OrientedPiece& op : loop.pieces) {
    const Piece& p = pp.pieces[op.piece];
    for (int k = 0; k < kSamples; ++k) {
      const double f = static_cast<double>(k) / kSamples;
      const double u = op.reversed ? p.u1 + (p.u0 - p.u1) * f : p.u0 + (p.u1 - p.u0) * f;
      const Vec2 q = p.curve.point(u);
      if (have) {
        area += cross(prev, q);
      } else {
        first = q;
        have = true;
      }
      prev = q;
    }
  }
  if (have) area += cross(prev, first);
  return 0.5 * area;
}

// Which side of an edge piece belongs to generator a.
bool a_on_left(const Scene& scene, const Piece& p) {
  const double um = 0.5 * (p.u0 + p.u1);
  const Vec2 q = p.curve.point(um);
  const Vec2 tangent = p.curve.derivative(um);
  const Generator& ga = scene[p.a];
  const Generator& gb = scene[p.b];
  const Vec2 grad = ga.m * (q - ga.p) * 2.0 - gb.m * (q - gb.p) * 2.0;
  const double side = dot(perp(tangent), grad);
  if (side != 0.0) return side < 0.0;
  // Vanishing gradient (double line): probe a small step to the left.
  const Vec2 probe = q + perp(tangent) * (1e-6 / std::max(norm(tangent), 1e-300));
  return dist_g(probe, ga) < dist_g(probe, gb);
}

void trace_loops(PlanarPieces& pp) {
  const int n = static_cast<int>(pp.generators.size());
  pp.cells.assign(n, FaceCell{});
  std::vector<std::vector<OrientedPiece>> per_cell(n);
  std::vector<std::set<int>> neighbors(n);
  for (int k = 0; k < static_cast<int>(pp.pieces.size()); ++k) {
    const Piece& p = pp.pieces[k];
    if (p.b < 0) {
      per_cell[p.a].push_back({k, false});
      continue;
    }
    per_cell[p.a].push_back({k, !p.a_left});
    per_cell[p.b].push_back({k, p.a_left});
    neighbors[p.a].insert(p.b);
    neighbors[p.b].insert(p.a);
  }

  for (int c = 0; c < n; ++c) {
    FaceCell& cell = pp.cells[c];
    cell.neighbors.assign(neighbors[c].begin(), neighbors[c].end());
    const auto& ops = per_cell[c];
    std::map<int, std::vector<int>> starts;
    for (int k = 0; k < static_cast<int>(ops.size()); ++k) {
      if (pp.pieces[ops[k].piece].closed) continue;
      starts[start_node(pp, ops[k])].push_back(k);
    }
    std::vector<bool> used(ops.size(), false);
    for (int k = 0; k < static_cast<int>(ops.size()); ++k) {
      if (used[k]) continue;
      Loop loop;
      used[k] = true;
      loop.pieces.push_back(ops[k]);
      if (!pp.pieces[ops[k].piece].closed) {
        const int home = start_node(pp, ops[k]);
        int current = k;
        while (true) {
          const int node = end_node(pp, ops[current]);
          if (node == home && !used.empty()) {
            // Closed, unless another unused piece of this cell also leaves the
            // home node and is a better continuation; the angular rule decides.
          }
          const Vec2 back = -in_tangent(pp, ops[current]);
          const double back_angle = std::atan2(back.y, back.x);
          int next = -1;
          double best = 0.0;
          const auto it = starts.find(node);
          if (it != starts.end()) {
            for (int cand : it->second) {
              if (used[cand] && cand != k) continue;
              const Vec2 o = out_tangent(pp, ops[cand]);
              double cw = std::fmod(back_angle - std::atan2(o.y, o.x) + 2.0 * kTwoPi, kTwoPi);
              if (cw <= 1e-12) cw = kTwoPi;
              if (next < 0 || cw < best) {
                next = cand;
                best = cw;
              }
            }
          }
          if (next < 0) {
            loop.closed = false;
            break;
          }
          if (next == k) break;
          used[next] = true;
          loop.pieces.push_back(ops[next]);
          current = next;
        }
      }
      loop.orientation = sampled_area(pp, loop);
      cell.loops.push_back(std::move(loop));
    }
    for (const Loop& l : cell.loops)
      if (l.orientation > 0.0) ++cell.n_regions;
  }
}

// Parameters in (lo, hi) where the curve meets the four window sides.
std::vector<std::pair<double, int>> window_crossings(const Curve& curve, const std::array<TrigRow, 3>* rows,
                                                     double lo, double hi, const Window& win) {
  std::vector<std::pair<double, int>> out;  // (u, side) side: 0 bottom, 1 right, 2 top, 3 left
  const double tol = 1e-12 * win.diagonal();
  const std::array<double, 4> value{win.ymin, win.xmax, win.ymax, win.xmin};
  for (int side = 0; side < 4; ++side) {
    const bool vertical = side == 1 || side == 3;
    std::vector<double> us;
    if (curve.straight()) {
      const Vec2 p = curve.point(0.0);
      const Vec2 d = curve.derivative(0.0);
      const double comp_d = vertical ? d.x : d.y;
      const double comp_p = vertical ? p.x : p.y;
      if (comp_d != 0.0) us.push_back((value[side] - comp_p) / comp_d);
    } else {
      const TrigRow& r = vertical ? (*rows)[0] : (*rows)[1];
      const TrigRow& w = (*rows)[2];
      const double v = value[side];
      for (double a : numeric::solve_trig(r.a - v * w.a, r.b - v * w.b, r.c - v * w.c)) {
        for (int k = -1; k <= 2; ++k) us.push_back(a + kTwoPi * k);
      }
    }
    for (double u : us) {
      if (!(u > lo && u < hi)) continue;
      const Vec2 q = curve.point(u);
      const double along = vertical ? q.y : q.x;
      const double amin = vertical ? win.ymin : win.xmin;
      const double amax = vertical ? win.ymax : win.xmax;
      if (along >= amin - tol && along <= amax + tol) out.emplace_back(u, side);
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<std::pair<double, int>> unique;
  for (const auto& c : out)
    if (unique.empty() || c.first - unique.back().first > 1e-12 * (1.0 + std::abs(c.first))) unique.push_back(c);
  return unique;
}

double perimeter_coordinate(const Window& win, const Vec2& q, int side) {
  const double w = win.width();
  const double h = win.height();
  switch (side) {
    case 0: return std::clamp(q.x - win.xmin, 0.0, w);
    case 1: return w + std::clamp(q.y - win.ymin, 0.0, h);
    case 2: return w + h + std::clamp(win.xmax - q.x, 0.0, w);
    default: return 2.0 * w + h + std::clamp(win.ymax - q.y, 0.0, h);
  }
}

Vec2 snap_to_side(const Window& win, Vec2 q, int side) {
  switch (side) {
    case 0: q.y = win.ymin; break;
    case 1: q.x = win.xmax; break;
    case 2: q.y = win.ymax; break;
    default: q.x = win.xmin; break;
  }
  q.x = std::clamp(q.x, win.xmin, win.xmax);
  q.y = std::clamp(q.y, win.ymin, win.ymax);
  return q;
}

}  // namespace

Vec2 PlanarPieces::start_point(const OrientedPiece& op) const {
  const Piece& p = pieces[op.piece];
  return p.curve.point(op.reversed ? p.u1 : p.u0);
}

Vec2 PlanarPieces::end_point(const OrientedPiece& op) const {
  const Piece& p = pieces[op.piece];
  return p.curve.point(op.reversed ? p.u0 : p.u1);
}

ClippedDiagram clip_to_window(const DiagramGraph& g, const Window& win) {
  ClippedDiagram out;
  out.window = win;
  out.generators = g.generators;
  for (const Vertex& v : g.vertices) out.nodes.push_back(v.pos);

  struct BoundaryNode {
    double s;
    int node;
  };
  std::vector<BoundaryNode> boundary;

  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const EdgeSegment& edge = g.edges[e];
    const Curve curve = g.curve(edge);
    const Bisector& b = g.bisector(edge.i, edge.j);
    const std::array<TrigRow, 3>* rows = b.shape.conic ? &b.shape.conic->rows : nullptr;
    const auto crossings = window_crossings(curve, rows, edge.u_a, edge.u_b, win);

    std::vector<int> cross_nodes;
    for (const auto& [u, side] : crossings) {
      const int id = static_cast<int>(out.nodes.size());
      const Vec2 q = snap_to_side(win, curve.point(u), side);
      out.nodes.push_back(q);
      boundary.push_back({perimeter_coordinate(win, q, side), id});
      cross_nodes.push_back(id);
    }

    const auto add_piece = [&](double u0, double u1, int n0, int n1, bool closed) {
      Piece p;
      p.a = edge.i;
      p.b = edge.j;
      p.curve = curve;
      p.u0 = u0;
      p.u1 = u1;
      p.node0 = n0;
      p.node1 = n1;
      p.edge = e;
      p.closed = closed;
      p.a_left = a_on_left(out.generators, p);
      out.pieces.push_back(p);
    };

    if (edge.full && edge.kind == ComponentKind::Loop) {
      if (crossings.empty()) {
        if (win.contains(curve.point(edge.u_a))) add_piece(edge.u_a, edge.u_a + kTwoPi, -1, -1, true);
        continue;
      }
      for (std::size_t k = 0; k < crossings.size(); ++k) {
        const double u0 = crossings[k].first;
        const double u1 = k + 1 < crossings.size() ? crossings[k + 1].first : crossings[0].first + kTwoPi;
        if (win.contains(curve.point(0.5 * (u0 + u1))))
          add_piece(u0, u1, cross_nodes[k], cross_nodes[(k + 1) % crossings.size()], false);
      }
      continue;
    }

    const int start = edge.start_kind == EndKind::Vertex ? edge.start_vertex : -1;
    const int end = edge.end_kind == EndKind::Vertex ? edge.end_vertex : -1;
    std::vector<double> cuts{edge.u_a};
    std::vector<int> nodes{start};
    for (std::size_t k = 0; k < crossings.size(); ++k) {
      cuts.push_back(crossings[k].first);
      nodes.push_back(cross_nodes[k]);
    }
    cuts.push_back(edge.u_b);
    nodes.push_back(end);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double u0 = cuts[k];
      const double u1 = cuts[k + 1];
      if (!std::isfinite(u0) || !std::isfinite(u1)) continue;
      if (nodes[k] < 0 || nodes[k + 1] < 0) continue;  // reaches infinity
      if (!win.contains(curve.point(0.5 * (u0 + u1)))) continue;
      add_piece(u0, u1, nodes[k], nodes[k + 1], false);
    }
  }

  // Window boundary, counterclockwise from the lower-left corner.
  const std::array<Vec2, 4> corners{Vec2{win.xmin, win.ymin}, Vec2{win.xmax, win.ymin}, Vec2{win.xmax, win.ymax},
                                    Vec2{win.xmin, win.ymax}};
  const std::array<double, 4> corner_s{0.0, win.width(), win.width() + win.height(),
                                       2.0 * win.width() + win.height()};
  for (int k = 0; k < 4; ++k) {
    boundary.push_back({corner_s[k], static_cast<int>(out.nodes.size())});
    out.nodes.push_back(corners[k]);
  }
  std::sort(boundary.begin(), boundary.end(),
            [](const BoundaryNode& a, const BoundaryNode& b) { return a.s < b.s || (a.s == b.s && a.node < b.node); });
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const int n0 = boundary[k].node;
    const int n1 = boundary[(k + 1) % boundary.size()].node;
    const Vec2 p0 = out.nodes[n0];
    const Vec2 p1 = out.nodes[n1];
    Piece p;
    p.b = -1;
    p.curve = Curve::line(p0, p1 - p0);
    p.u0 = 0.0;
    p.u1 = 1.0;
    p.node0 = n0;
    p.node1 = n1;
    p.a = nearest_generator(out.generators, (p0 + p1) * 0.5);
    out.pieces.push_back(p);
  }

  trace_loops(out);
  return out;
}

PlanarPieces bounded_cells(const DiagramGraph& g) {
  PlanarPieces out;
  out.generators = g.generators;
  for (const Vertex& v : g.vertices) out.nodes.push_back(v.pos);
  const int n = static_cast<int>(g.generators.size());
  std::vector<bool> unbounded(n, n == 1);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const EdgeSegment& edge = g.edges[e];
    if (edge.start_kind == EndKind::Unbounded || edge.end_kind == EndKind::Unbounded) {
      unbounded[edge.i] = unbounded[edge.j] = true;
      continue;
    }
    Piece p;
    p.a = edge.i;
    p.b = edge.j;
    p.curve = g.curve(edge);
    p.u0 = edge.u_a;
    p.u1 = edge.u_b;
    p.closed = edge.start_kind == EndKind::Loop;
    p.node0 = p.closed ? -1 : edge.start_vertex;
    p.node1 = p.closed ? -1 : edge.end_vertex;
    p.edge = e;
    p.a_left = a_on_left(out.generators, p);
    out.pieces.push_back(p);
  }
  // Pieces of unbounded cells still matter to their bounded neighbours.
  trace_loops(out);
  for (int c = 0; c < n; ++c) {
    if (!unbounded[c]) continue;
    out.cells[c].bounded = false;
    out.cells[c].loops.clear();
    out.cells[c].n_regions = 0;
  }
  return out;
}

Window enclosing_window(const DiagramGraph& g) {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin, xmax = -xmin, ymax = -xmin;
  const auto add = [&](const Vec2& q) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  };
  for (const Generator& gen : g.generators) add(gen.p);
  for (const Vertex& v : g.vertices) add(v.pos);
  for (const EdgeSegment& e : g.edges) {
    // Closed loops must end up strictly inside; other edges contribute a point.
    const Curve curve = g.curve(e);
    if (e.full && e.kind == ComponentKind::Loop) {
      for (int k = 0; k < 16; ++k) add(curve.point(e.u_a + (e.u_b - e.u_a) * k / 16.0));
    } else {
      add(curve.point(g.representative(e)));
    }
  }
  const double base = std::max({xmax - xmin, ymax - ymin, 1.0});
  std::set<std::pair<int, int>> seen;
  for (const EdgeSegment& e : g.edges) {
    if (!seen.insert({e.i, e.j}).second) continue;
    const ConicImplicit& c = g.bisector(e.i, e.j).implicit;
    const double det = c.a11 * c.a22 - c.a12 * c.a12;
    if (det == 0.0) continue;
    // Centre of a central conic: A x = -B / 2.
    const Vec2 centre{(-0.5 * c.b11 * c.a22 + 0.5 * c.b12 * c.a12) / det,
                      (-0.5 * c.b12 * c.a11 + 0.5 * c.b11 * c.a12) / det};
    if (std::isfinite(centre.x) && std::isfinite(centre.y) && norm(centre - g.generators[0].p) < 1e4 * base)
      add(centre);
  }
  const double pad = std::max({xmax - xmin, ymax - ymin, 1.0});
  return {xmin - pad, ymin - pad, xmax + pad, ymax + pad};
}

}  // namespace gbpd
