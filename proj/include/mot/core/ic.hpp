#pragma once

#include <cstdint>

#include "mot/core/config.hpp"
#include "mot/core/ensemble.hpp"
#include "mot/core/field.hpp"

namespace mot {

// Centered isotropic Gaussian, renormalized so the discrete mass (cell sum
// times cell area) equals `mass` up to round-off. Requires the domain to
// contain +-4 sigma; renormalization absorbs the truncated tail.
DensityField make_gaussian_ic(const Grid2D& grid, double sigma, double mass);

// Centered axis-aligned anisotropic Gaussian, same normalization contract.
DensityField make_gaussian_aniso_ic(const Grid2D& grid, double sigma_x, double sigma_y,
                                    double mass);

// Centered uniform disc (sharp edge at cell-center membership).
DensityField make_disc_ic(const Grid2D& grid, double radius, double mass);

DensityField make_ic(const Grid2D& grid, const IcSpec& ic);

// Draw n particles from a nonnegative density: cell chosen by CDF inversion
// on cell masses, position uniform within the cell. Deterministic given seed
// and independent of evaluation order (per-particle counter streams).
ParticleEnsemble sample_particles_from_density(const DensityField& rho, int n,
                                               std::uint64_t seed);

}  // namespace mot
