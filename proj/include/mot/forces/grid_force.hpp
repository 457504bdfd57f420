#pragma once

#include "mot/core/config.hpp"
#include "mot/core/field.hpp"

namespace mot::forces {

// Cell-centered potentials whose per-axis differences drive the finite-volume
// fluxes: U varies along x (dU/dx = -Fx), V along y.
struct Potentials {
    DensityField U;
    DensityField V;
};

// Attractive force of the exact (discontinuous-sign) interaction. Each
// component is a one-coordinate convolution of the density along its own
// axis, evaluated with directional running sums; a cell never acts on itself.
ForceField singular_force(const DensityField& rho);

// Smoothed interaction at width eps: the x component is the smoothed sign
// convolved along x with the density mollified along y (and symmetrically
// for y). Equals the naive double sum to rounding error but runs in
// O(n * band) per line.
ForceField regularized_force(const DensityField& rho, double eps);

ForceField force_field(const DensityField& rho, ForceMode mode, double eps);

// Product-Gaussian mollification at width eps in both coordinates.
// Conserves total mass exactly (per-source normalization) and preserves
// mirror symmetry bit-for-bit on symmetric grids.
DensityField mollify(const DensityField& rho, double eps);

// Potentials matching singular_force / regularized_force.
Potentials potentials(const DensityField& rho, ForceMode mode, double eps);

}  // namespace mot::forces
