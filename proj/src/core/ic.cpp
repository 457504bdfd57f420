#include "mot/core/ic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mot/core/errors.hpp"
#include "mot/core/rng.hpp"

namespace mot {
namespace {

void require_domain(const Grid2D& g, double need_x, double need_y, const char* what) {
    if (g.x_max < need_x || -g.x_min < need_x || g.y_max < need_y || -g.y_min < need_y)
        throw ConfigError(std::string(what) +
                          ": domain must contain the support scale (need half-widths >= " +
                          std::to_string(need_x) + ", " + std::to_string(need_y) + ")");
}

// Scale so that sum(v) * cell_area == mass. Mirror symmetry of v is preserved
// because every cell is multiplied by the same factor.
void renormalize(DensityField& f, double mass) {
    double sum = 0.0;
    for (double x : f.v) sum += x;
    const double total = sum * f.grid.cell_area();
    if (!(total > 0.0)) throw ConfigError("initial condition has zero mass on this grid");
    const double scale = mass / total;
    for (double& x : f.v) x *= scale;
}

}  // namespace

DensityField make_gaussian_ic(const Grid2D& grid, double sigma, double mass) {
    return make_gaussian_aniso_ic(grid, sigma, sigma, mass);
}

DensityField make_gaussian_aniso_ic(const Grid2D& grid, double sigma_x, double sigma_y,
                                    double mass) {
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) throw ConfigError("gaussian ic: sigma must be > 0");
    // 4 sigma of room keeps the truncated tail below ~1e-4 of the mass;
    // renormalization absorbs the rest.
    require_domain(grid, 4.0 * sigma_x, 4.0 * sigma_y, "gaussian ic");
    DensityField f(grid);
    const double amp = mass / (2.0 * std::numbers::pi * sigma_x * sigma_y);
    const double ax = 0.5 / (sigma_x * sigma_x);
    const double ay = 0.5 / (sigma_y * sigma_y);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        const double ey = std::exp(-ay * y * y);
        double* row = f.row(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            row[i] = amp * std::exp(-ax * x * x) * ey;
        }
    }
    renormalize(f, mass);
    return f;
}

DensityField make_disc_ic(const Grid2D& grid, double radius, double mass) {
    if (!(radius > 0.0)) throw ConfigError("disc ic: radius must be > 0");
    require_domain(grid, radius, radius, "disc ic");
    DensityField f(grid);
    const double r2 = radius * radius;
    const double val = mass / (std::numbers::pi * r2);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        double* row = f.row(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            row[i] = (x * x + y * y <= r2) ? val : 0.0;
        }
    }
    renormalize(f, mass);
    return f;
}

DensityField make_ic(const Grid2D& grid, const IcSpec& ic) {
    switch (ic.kind) {
        case IcSpec::Kind::kGaussian:
            return make_gaussian_ic(grid, ic.sigma, ic.mass);
        case IcSpec::Kind::kGaussianAniso:
            return make_gaussian_aniso_ic(grid, ic.sigma_x, ic.sigma_y, ic.mass);
        case IcSpec::Kind::kDisc:
            return make_disc_ic(grid, ic.radius, ic.mass);
    }
    throw ConfigError("unknown ic kind");
}

ParticleEnsemble sample_particles_from_density(const DensityField& rho, int n,
                                               std::uint64_t seed) {
    if (n < 1) throw ConfigError("sample_particles_from_density: n must be >= 1");
    const Grid2D& g = rho.grid;
    std::vector<double> cum(rho.size());
    double run = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double v = rho.v[k];
        if (v < 0.0) throw ConfigError("sample_particles_from_density: negative density cell");
        run += v;
        cum[k] = run;
    }
    if (!(run > 0.0)) throw ConfigError("sample_particles_from_density: zero-mass density");

    ParticleEnsemble e(static_cast<std::size_t>(n));
    const double dx = g.dx(), dy = g.dy();
    for (int p = 0; p < n; ++p) {
        const CounterStream stream(seed, static_cast<std::uint64_t>(p));
        const auto w = stream.raw(0, CounterStream::kSample);
        const double target = philox::to_unit(w[0]) * run;
        const auto it = std::upper_bound(cum.begin(), cum.end(), target);
        const std::size_t k = std::min(static_cast<std::size_t>(it - cum.begin()), rho.size() - 1);
        const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
        const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
        e.x[p] = g.x(i) + (philox::to_unit(w[1]) - 0.5) * dx;
        e.y[p] = g.y(j) + (philox::to_unit(w[2]) - 0.5) * dy;
    }
    return e;
}

}  // namespace mot
