#pragma once

#include <cassert>
#include <vector>

#include "mot/core/grid.hpp"

namespace mot {

// Scalar samples on a Grid2D, row-major with x fastest: index = j*nx + i.
// Used for densities, potentials, and force components alike.
struct DensityField {
    Grid2D grid;
    std::vector<double> v;

    DensityField() = default;
    explicit DensityField(const Grid2D& g) : grid(g), v(g.size(), 0.0) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * grid.nx + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * grid.nx + i]; }

    double* row(int j) { return v.data() + static_cast<std::size_t>(j) * grid.nx; }
    const double* row(int j) const { return v.data() + static_cast<std::size_t>(j) * grid.nx; }

    std::size_t size() const { return v.size(); }
};

// Per-axis force samples at cell centers.
struct ForceField {
    DensityField fx;
    DensityField fy;
};

}  // namespace mot
