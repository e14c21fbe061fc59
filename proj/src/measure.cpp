/* Apache License, Version 2.0 */

#include "gbpd/measure.hpp"

#include <algorithm>
#include <cmath>

#include "gbpd/error.hpp"
#include "gbpd/numeric.hpp"

namespace gbpd {

namespace {

// Splits [u0, u1] into a few panels before adaptive refinement; curved pieces
// can be long (full ellipses) and benefit from a head start.
double integrate_panels(const std::function<double(double)>& f, double u0, double u1, double tol, double abs_tol) {
  constexpr int kPanels = 4;
  double sum = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double a = u0 + (u1 - u0) * k / kPanels;
    const double b = u0 + (u1 - u0) * (k + 1) / kPanels;
    sum += numeric::integrate(f, a, b, tol, abs_tol / kPanels);
  }
  return sum;
}

// Rough size of a curve piece, for absolute quadrature floors.
double extent(const Curve& c, double u0, double u1) {
  const Vec2 a = c.point(u0);
  const Vec2 m = c.point(0.5 * (u0 + u1));
  const Vec2 b = c.point(u1);
  return std::max({norm(b - a), norm(m - a), norm(m - b), 1e-300});
}

// Piece traversal bounds in loop direction.
std::pair<double, double> bounds(const Piece& p, const OrientedPiece& op) {
  return op.reversed ? std::pair{p.u1, p.u0} : std::pair{p.u0, p.u1};
}

double piece_length(const Piece& p, double tol) {
  if (p.curve.straight()) return norm(p.curve.point(p.u1) - p.curve.point(p.u0));
  return arc_length(p.curve, p.u0, p.u1, tol);
}

}  // namespace

double arc_length(const Curve& c, double u0, double u1, double tol) {
  if (!std::isfinite(u0) || !std::isfinite(u1)) throw Error(ErrorKind::NonFiniteSegment, "infinite curve piece");
  if (c.straight()) return norm(c.point(u1) - c.point(u0));
  const double size = extent(c, u0, u1);
  return std::abs(integrate_panels([&](double u) { return norm(c.derivative(u)); }, u0, u1, tol, tol * size));
}

double edge_arc_length(const DiagramGraph& g, const EdgeSegment& e, double tol) {
  if (e.start_kind == EndKind::Unbounded || e.end_kind == EndKind::Unbounded)
    throw Error(ErrorKind::NonFiniteSegment, "edge reaches infinity; clip it first");
  return arc_length(g.curve(e), e.u_a, e.u_b, tol);
}

double loop_area(const PlanarPieces& pp, const Loop& loop, double tol) {
  if (loop.pieces.empty()) return 0.0;
  const Vec2 ref = pp.start_point(loop.pieces.front());
  double polygon = 0.0;
  double bulges = 0.0;
  for (const OrientedPiece& op : loop.pieces) {
    const Piece& p = pp.pieces[op.piece];
    const Vec2 a = pp.start_point(op) - ref;
    const Vec2 b = pp.end_point(op) - ref;
    polygon += 0.5 * cross(a, b);
    if (p.curve.straight()) continue;
    // Area between the arc and its chord; the integral carries its own sign.
    const auto [u0, u1] = bounds(p, op);
    const Vec2 start = p.curve.point(u0);
    const double size = extent(p.curve, u0, u1);
    bulges += 0.5 * integrate_panels(
                        [&](double u) { return cross(p.curve.point(u) - start, p.curve.derivative(u)); }, u0, u1,
                        tol, tol * size * size);
  }
  return polygon + bulges;
}

double loop_area_contour(const PlanarPieces& pp, const Loop& loop, double tol) {
  if (loop.pieces.empty()) return 0.0;
  const Vec2 ref = pp.start_point(loop.pieces.front());
  double area = 0.0;
  for (const OrientedPiece& op : loop.pieces) {
    const Piece& p = pp.pieces[op.piece];
    const auto [u0, u1] = bounds(p, op);
    const double size = std::max(extent(p.curve, u0, u1), norm(p.curve.point(u0) - ref));
    area += 0.5 * integrate_panels([&](double u) { return cross(p.curve.point(u) - ref, p.curve.derivative(u)); },
                                   u0, u1, tol, tol * size * size);
  }
  return area;
}

double loop_length(const PlanarPieces& pp, const Loop& loop, double tol) {
  double len = 0.0;
  for (const OrientedPiece& op : loop.pieces) len += piece_length(pp.pieces[op.piece], tol);
  return len;
}

CellMeasure cell_measure(const PlanarPieces& pp, int cell, double tol) {
  const FaceCell& fc = pp.cells.at(cell);
  if (!fc.bounded) throw Error(ErrorKind::UnboundedCell, "cell " + std::to_string(cell) + " is unbounded");
  CellMeasure m;
  m.cell_id = pp.generators[cell].id;
  m.n_components = fc.n_regions;
  m.n_neighbors = static_cast<int>(fc.neighbors.size());
  for (const Loop& loop : fc.loops) {
    if (!loop.closed) throw Error(ErrorKind::UnboundedCell, "cell " + std::to_string(cell) + " has an open boundary");
    ComponentMeasure cm{loop_area(pp, loop, tol), loop_length(pp, loop, tol)};
    m.area += cm.area;
    m.perimeter += cm.perimeter;
    m.components.push_back(cm);
  }
  return m;
}

double cell_area(const PlanarPieces& pp, int cell, double tol) { return cell_measure(pp, cell, tol).area; }

double cell_perimeter(const PlanarPieces& pp, int cell, double tol) {
  return cell_measure(pp, cell, tol).perimeter;
}

CellMeasure cell_measure(const DiagramGraph& g, int cell, double tol) {
  const PlanarPieces pp = bounded_cells(g);
  CellMeasure m = cell_measure(pp, cell, tol);
  m.n_neighbors = g.cells.at(cell).n_neighbors;
  return m;
}

std::vector<CellMeasure> measure_cells(const DiagramGraph& g, const ClippedDiagram& clipped, double tol) {
  std::vector<CellMeasure> out;
  for (int c = 0; c < static_cast<int>(clipped.cells.size()); ++c) {
    CellMeasure m = cell_measure(clipped, c, tol);
    m.n_neighbors = g.cells.at(c).n_neighbors;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace gbpd
