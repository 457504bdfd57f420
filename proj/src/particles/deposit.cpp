#include "mot/particles/deposit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mot/core/errors.hpp"

namespace mot::particles {

DensityField mollified_density(const ParticleEnsemble& z, const Grid2D& grid, double bw,
                               double total) {
    if (!(bw > 0.0)) throw ConfigError("density deposit: bandwidth must be positive");
    if (!(total > 0.0)) throw ConfigError("density deposit: total mass must be positive");
    if (z.n() == 0) throw ConfigError("density deposit: empty ensemble");

    DensityField out(grid);
    const double dx = grid.dx(), dy = grid.dy();
    const int kx = std::max(1, static_cast<int>(std::ceil(7.5 * bw / dx)));
    const int ky = std::max(1, static_cast<int>(std::ceil(7.5 * bw / dy)));
    const double cell_w = total / (double(z.n()) * grid.cell_area());
    std::vector<double> wx(2 * kx + 1), wy(2 * ky + 1);

    for (std::size_t p = 0; p < z.n(); ++p) {
        // nearest cell, clamped so far-away particles still land on the grid
        const double sx = std::clamp((z.x[p] - grid.x(0)) / dx, -1.0, double(grid.nx));
        const double sy = std::clamp((z.y[p] - grid.y(0)) / dy, -1.0, double(grid.ny));
        const int ic = std::clamp(static_cast<int>(std::lround(sx)), 0, grid.nx - 1);
        const int jc = std::clamp(static_cast<int>(std::lround(sy)), 0, grid.ny - 1);
        const int i_lo = std::max(0, ic - kx), i_hi = std::min(grid.nx - 1, ic + kx);
        const int j_lo = std::max(0, jc - ky), j_hi = std::min(grid.ny - 1, jc + ky);

        double sum_x = 0.0, sum_y = 0.0;
        for (int i = i_lo; i <= i_hi; ++i) {
            const double t = (grid.x(i) - z.x[p]) / bw;
            wx[i - i_lo] = std::exp(-0.5 * t * t);
            sum_x += wx[i - i_lo];
        }
        for (int j = j_lo; j <= j_hi; ++j) {
            const double t = (grid.y(j) - z.y[p]) / bw;
            wy[j - j_lo] = std::exp(-0.5 * t * t);
            sum_y += wy[j - j_lo];
        }
        const double w_total = sum_x * sum_y;
        if (!(w_total > 0.0)) {  // footprint entirely off-grid (weights underflowed)
            out.at(ic, jc) += cell_w;
            continue;
        }
        const double q = cell_w / w_total;
        for (int j = j_lo; j <= j_hi; ++j) {
            double* row = out.row(j);
            const double qy = q * wy[j - j_lo];
            for (int i = i_lo; i <= i_hi; ++i) row[i] += qy * wx[i - i_lo];
        }
    }
    return out;
}

}  // namespace mot::particles
