#pragma once

#include "gfk/grid.hpp"

// Gaussian perimeter of rasterized sets. The indicator is smoothed over the
// 3-cell stencil (see smoothed_indicator) and the 0.5 level of the smoothed
// field is reconstructed by marching segments (1-D crossings, marching
// squares, marching cubes). The weight (2 pi)^{-(N-1)/2} e^{-|x|^2/2} is
// integrated at segment midpoints / triangle centroids. Plain staircase
// counting would overestimate by up to sqrt(2); the reconstruction
// converges to P_gamma(E) for piecewise-smooth sets.

namespace gfk {

struct PerimeterResult {
  double value = 0.0;
  // Set when inside cells reach the outermost cell layer; the part of the
  // interface beyond the box carries only tail mass but is not seen.
  bool boundary_touching = false;
};

PerimeterResult gauss_perimeter(const DomainMask& mask);

}  // namespace gfk
