/* Apache License, Version 2.0 */

#pragma once

#include <iosfwd>
#include <vector>

#include "gbpd/clip.hpp"
#include "gbpd/core.hpp"

namespace gbpd {

/// Row-major labels; row 0 is the top of the window (largest y).
struct LabelImage {
  int width = 0, height = 0;
  Window window;
  int background = 0;  // label value used for "no generator"
  std::vector<int> labels;

  Vec2 pixel_size() const { return {window.width() / width, window.height() / height}; }
  Vec2 pixel_center(int col, int row) const;
  int at(int col, int row) const { return labels[static_cast<std::size_t>(row) * width + col]; }
  int& at(int col, int row) { return labels[static_cast<std::size_t>(row) * width + col]; }
};

LabelImage blank_image(const Window& win, int width, int height, int background);

/// Nearest generator (scene index) at every pixel centre; ties go to the lowest index.
LabelImage rasterize(const Scene& scene, const Window& win, int width, int height, int threads = 1);

/// PGM P2 with maxval = background; the window goes into a comment line.
void write_pgm(std::ostream& os, const LabelImage& img);
LabelImage read_pgm(std::istream& is);

struct MismatchStats {
  long long mismatched = 0;
  long long total = 0;
  double fraction = 0.0;
  /// histogram[d] = mismatched pixels at Chebyshev distance d from the nearest
  /// label boundary of the first image; the last bin collects everything farther.
  std::vector<long long> distance_histogram;
  long long within_one = 0;  // distance <= 1
};

/// Throws DimensionMismatch when sizes differ.
MismatchStats compare_labels(const LabelImage& a, const LabelImage& b);

/// A pixel belonging to some 2x2 block with at least three labels.
struct Junction {
  int col = 0, row = 0;
  Vec2 pos;                 // pixel centre
  std::vector<int> labels;  // union over the qualifying blocks
};

struct RasterStats {
  std::vector<long long> counts;  // indexed by label, background included
  std::vector<Junction> junctions;  // row-major order
};

RasterStats raster_cell_stats(const LabelImage& img);

}  // namespace gbpd
