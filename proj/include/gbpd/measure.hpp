/* Apache License, Version 2.0 */

#pragma once

#include <vector>

#include "gbpd/clip.hpp"
#include "gbpd/diagram.hpp"

namespace gbpd {

/// Length of a curve between two parameters by adaptive quadrature of its speed.
double arc_length(const Curve& c, double u0, double u1, double tol = 1e-10);

/// Throws NonFiniteSegment for edges reaching infinity.
double edge_arc_length(const DiagramGraph& g, const EdgeSegment& e, double tol = 1e-10);

/// Signed area enclosed by a loop: shoelace of its nodes plus one bulge
/// integral per curved piece, each taken relative to the piece's chord.
double loop_area(const PlanarPieces& pp, const Loop& loop, double tol = 1e-10);

/// The same quantity by a direct contour integral of (x dy - y dx) / 2.
double loop_area_contour(const PlanarPieces& pp, const Loop& loop, double tol = 1e-10);

double loop_length(const PlanarPieces& pp, const Loop& loop, double tol = 1e-10);

struct ComponentMeasure {
  double area = 0.0;       // signed: outer boundaries positive, holes negative
  double perimeter = 0.0;
};

struct CellMeasure {
  int cell_id = 0;
  double area = 0.0;
  double perimeter = 0.0;
  int n_components = 0;
  int n_neighbors = 0;
  std::vector<ComponentMeasure> components;  // one per boundary loop
};

/// Throws UnboundedCell when the cell has no finite boundary in `pp`.
CellMeasure cell_measure(const PlanarPieces& pp, int cell, double tol = 1e-10);

double cell_area(const PlanarPieces& pp, int cell, double tol = 1e-10);
double cell_perimeter(const PlanarPieces& pp, int cell, double tol = 1e-10);

/// Area and perimeter of a naturally bounded cell of the unclipped diagram.
CellMeasure cell_measure(const DiagramGraph& g, int cell, double tol = 1e-10);

/// One entry per generator; neighbor counts come from the full diagram.
std::vector<CellMeasure> measure_cells(const DiagramGraph& g, const ClippedDiagram& clipped, double tol = 1e-10);

}  // namespace gbpd
