/* Apache License, Version 2.0 */

#pragma once

#include <vector>

#include "gbpd/bisector.hpp"
#include "gbpd/core.hpp"

namespace gbpd {

struct DiagramGraph;

struct Window {
  double xmin = 0.0, ymin = 0.0, xmax = 400.0, ymax = 400.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(const Vec2& q) const { return q.x > xmin && q.x < xmax && q.y > ymin && q.y < ymax; }
};

/// A bounded curve piece between two nodes. Edge pieces separate generators a
/// and b; window pieces have b = -1 and run counterclockwise around the window.
struct Piece {
  int a = -1, b = -1;
  Curve curve = Curve::line({}, {});
  double u0 = 0.0, u1 = 0.0;
  int node0 = -1, node1 = -1;
  int edge = -1;        // source edge id, -1 for window pieces
  bool closed = false;  // full loop without nodes
  bool a_left = true;   // cell a lies to the left of the forward direction
};

struct OrientedPiece {
  int piece = 0;
  bool reversed = false;
};

/// Boundary loop of a cell with the cell on its left: counterclockwise outer
/// boundaries, clockwise holes.
struct Loop {
  std::vector<OrientedPiece> pieces;
  double orientation = 0.0;  // signed area of a sampled polygon
  bool closed = true;        // false if tracing hit a dead end
};

struct FaceCell {
  bool bounded = true;
  std::vector<Loop> loops;
  std::vector<int> neighbors;
  int n_regions = 0;
};

struct PlanarPieces {
  Scene generators;
  std::vector<Vec2> nodes;
  std::vector<Piece> pieces;
  std::vector<FaceCell> cells;

  Vec2 start_point(const OrientedPiece& op) const;
  Vec2 end_point(const OrientedPiece& op) const;
};

struct ClippedDiagram : PlanarPieces {
  Window window;
};

/// Cuts every edge at the window boundary, assigns window boundary arcs to the
/// generator nearest their midpoint and traces the (bounded) cell loops.
ClippedDiagram clip_to_window(const DiagramGraph& g, const Window& win);

/// Loops of the naturally bounded cells; cells touching an unbounded edge are
/// marked bounded = false and carry no loops.
PlanarPieces bounded_cells(const DiagramGraph& g);

/// A window large enough that clipping to it preserves the cell topology.
Window enclosing_window(const DiagramGraph& g);

}  // namespace gbpd
