/* Apache License, Version 2.0 */

#pragma once

#include <stdexcept>
#include <string>

namespace gbpd {

enum class ErrorKind {
  InvalidInput,       // malformed file, non positive-definite matrix, bad flags
  NonRenderable,      // 1 + w <= 0, no scaled contour
  SingularParameter,  // evaluating a rational parametrization where u(t) = 0
  NoSolution,         // point is not on the conic
  OverlappingConics,  // zero sets coincide, intersection is not finite
  NonFiniteSegment,   // arc length of an unbounded edge
  UnboundedCell,      // area/perimeter of an unclipped infinite cell
  DegenerateRegion,   // label region too small for PCA
  DimensionMismatch,  // label images of different sizes
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gbpd
