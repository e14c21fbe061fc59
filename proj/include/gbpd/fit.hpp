/* Apache License, Version 2.0 */

#pragma once

#include <vector>

#include "gbpd/core.hpp"
#include "gbpd/oracle.hpp"

namespace gbpd {

struct FittedGenerator {
  Generator gen;
  long long pixels = 0;
  std::array<double, 2> eigenvalues{};  // of the pixel covariance, descending
  bool degenerate = false;              // fewer than 3 pixels or singular covariance
};

/// One generator per non-background label present in the image, ordered by
/// label. Centre = pixel centroid in window coordinates; M = U diag(1/(scale
/// e1), 1/(scale e2)) U^T from the centroid covariance U diag(e1, e2) U^T.
/// Degenerate regions fall back to M = (1/scale) I and are flagged.
std::vector<FittedGenerator> fit_generators_from_labels(const LabelImage& img, double scale = 1.0,
                                                        double default_weight = 0.0);

Scene fitted_scene(const std::vector<FittedGenerator>& fits);

}  // namespace gbpd
