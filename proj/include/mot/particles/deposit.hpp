#pragma once

#include "mot/core/ensemble.hpp"
#include "mot/core/field.hpp"

namespace mot::particles {

// Kernel-density estimate of the ensemble on a grid: each particle spreads
// total / n() mass through a truncated product-Gaussian footprint of width bw
// (half-width ceil(7.5 bw / cell) cells per axis, the same truncation rule as
// the grid-density smoother), renormalized over the in-grid cells so the
// deposited mass equals `total` up to round-off even near the boundary. A
// particle whose footprint misses the grid entirely deposits into the nearest
// boundary cell, so mass is conserved unconditionally.
DensityField mollified_density(const ParticleEnsemble& z, const Grid2D& grid, double bw,
                               double total = 1.0);

}  // namespace mot::particles
