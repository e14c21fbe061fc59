/* Apache License, Version 2.0 */

#pragma once

#include <string>
#include <vector>

#include "gbpd/clip.hpp"
#include "gbpd/diagram.hpp"
#include "gbpd/oracle.hpp"

namespace gbpd {

/// Polyline through c(u0) .. c(u1) whose chords stay within `chord_tol` of the curve.
std::vector<Vec2> flatten(const Curve& c, double u0, double u1, double chord_tol);

/// Polygon of a cell loop (closing point omitted).
std::vector<Vec2> flatten_loop(const PlanarPieces& pp, const Loop& loop, double chord_tol);

/// Labels of the clipped analytic diagram at pixel centres (nonzero winding of
/// each cell's flattened loops); uncovered pixels get the background label.
LabelImage rasterize_diagram(const ClippedDiagram& clipped, int width, int height, double chord_tol_px = 0.01);

struct SvgOptions {
  int width = 800, height = 800;  // viewport in px
  double chord_tol_px = 0.1;
  bool fill_cells = true;
  bool ellipses = true;
  bool vertices = true;
};

std::string render_svg(const DiagramGraph& g, const ClippedDiagram& clipped, const SvgOptions& opt = {});

}  // namespace gbpd
