#pragma once

#include <cstddef>

namespace mot {

// Uniform cell-centered Cartesian grid on [x_min,x_max] x [y_min,y_max].
// Cell centers sit at x_min + (i+1/2)dx, evaluated in a centered form so that
// on a symmetric grid (bounds mirrored around 0) the index involution
// i -> nx-1-i negates coordinates *bit-exactly*.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    double dx() const { return (x_max - x_min) / nx; }
    double dy() const { return (y_max - y_min) / ny; }
    double cell_area() const { return dx() * dy(); }

    double x(int i) const {
        return 0.5 * (x_min + x_max) + (i + 0.5 - 0.5 * nx) * dx();
    }
    double y(int j) const {
        return 0.5 * (y_min + y_max) + (j + 0.5 - 0.5 * ny) * dy();
    }

    int mirror_x(int i) const { return nx - 1 - i; }
    int mirror_y(int j) const { return ny - 1 - j; }

    // Mirror-symmetric about both axes (required for symmetry diagnostics).
    bool symmetric() const {
        const double sx = (x_max - x_min), sy = (y_max - y_min);
        return (x_min + x_max == 0.0 || (x_min + x_max) / sx < 1e-14) &&
               (y_min + y_max == 0.0 || (y_min + y_max) / sy < 1e-14) &&
               ((x_min + x_max) / sx > -1e-14) && ((y_min + y_max) / sy > -1e-14);
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    bool operator==(const Grid2D&) const = default;
};

}  // namespace mot
