#include "mot/diagnostics/observables.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mot/core/errors.hpp"

namespace mot::diagnostics {
namespace {

void require_same_grid(const DensityField& a, const DensityField& b) {
    if (!(a.grid == b.grid)) throw ConfigError("fields live on different grids");
}

}  // namespace

double total_mass(const DensityField& rho) {
    double s = 0.0;
    for (double v : rho.v) s += v;
    return s * rho.grid.cell_area();
}

double lp_norm(const DensityField& rho, double p) {
    if (!(p >= 1.0)) throw ConfigError("lp_norm needs p >= 1");
    double s = 0.0;
    for (double v : rho.v) s += std::pow(std::abs(v), p);
    return std::pow(s * rho.grid.cell_area(), 1.0 / p);
}

double linf_norm(const DensityField& rho) {
    double m = 0.0;
    for (double v : rho.v) m = std::max(m, std::abs(v));
    return m;
}

double moment_k(const DensityField& rho, int k) {
    if (k != 2 && k != 4) throw ConfigError("moment_k supports k in {2,4}");
    const Grid2D& g = rho.grid;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        const double yk = (k == 2) ? y * y : y * y * y * y;
        const double* r = rho.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            const double xk = (k == 2) ? x * x : x * x * x * x;
            s += (xk + yk) * r[i];
        }
    }
    return s * g.cell_area();
}

double moment_k(const ParticleEnsemble& e, int k) {
    if (k != 2 && k != 4) throw ConfigError("moment_k supports k in {2,4}");
    double s = 0.0;
    for (std::size_t n = 0; n < e.n(); ++n) {
        const double x = e.x[n], y = e.y[n];
        s += (k == 2) ? x * x + y * y
                      : x * x * x * x + y * y * y * y;
    }
    return s / double(e.n());
}

double entropy(const DensityField& rho) {
    const double area = rho.grid.cell_area();
    const double total = total_mass(rho);
    const double domain =
        (rho.grid.x_max - rho.grid.x_min) * (rho.grid.y_max - rho.grid.y_min);
    const double floor = 1e-12 * std::abs(total) / domain;
    double s = 0.0;
    for (double v : rho.v)
        if (v > floor) s += v * std::log(v);
    return s * area;
}

double exp_moment(const DensityField& rho, double lambda) {
    if (lambda < 0.0) throw ConfigError("exp_moment needs lambda >= 0");
    const Grid2D& g = rho.grid;
    // log-sum-exp: shift by the largest exponent so the sum cannot overflow
    double emax = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double r2 = 1.0 + g.x(i) * g.x(i) + g.y(j) * g.y(j);
            emax = std::max(emax, lambda * std::sqrt(r2));
        }
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y2 = g.y(j) * g.y(j);
        const double* r = rho.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const double e = lambda * std::sqrt(1.0 + g.x(i) * g.x(i) + y2);
            s += std::exp(e - emax) * r[i];
        }
    }
    return std::exp(std::log(s * g.cell_area()) + emax);
}

double covariance_stat(const DensityField& rho) {
    const Grid2D& g = rho.grid;
    const double m = total_mass(rho);
    if (!(m > 0.0)) throw NumericalError("covariance_stat of a massless field");
    double axy = 0.0, ax = 0.0, ay = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = std::abs(g.y(j));
        const double* r = rho.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = std::abs(g.x(i));
            axy += x * y * r[i];
            ax += x * r[i];
            ay += y * r[i];
        }
    }
    const double scale = g.cell_area() / m;
    return axy * scale - (ax * scale) * (ay * scale);
}

double covariance_stat(const ParticleEnsemble& e) {
    if (e.n() == 0) throw NumericalError("covariance_stat of an empty ensemble");
    double axy = 0.0, ax = 0.0, ay = 0.0;
    for (std::size_t n = 0; n < e.n(); ++n) {
        const double x = std::abs(e.x[n]), y = std::abs(e.y[n]);
        axy += x * y;
        ax += x;
        ay += y;
    }
    const double inv = 1.0 / double(e.n());
    return axy * inv - (ax * inv) * (ay * inv);
}

double symmetry_defect(const DensityField& rho) {
    const Grid2D& g = rho.grid;
    if (!g.symmetric()) throw ConfigError("symmetry_defect needs a symmetric grid");
    double d = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            d = std::max(d, std::abs(rho.at(i, j) - rho.at(g.mirror_x(i), j)));
            d = std::max(d, std::abs(rho.at(i, j) - rho.at(i, g.mirror_y(j))));
        }
    return d;
}

double l1_distance(const DensityField& a, const DensityField& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) s += std::abs(a.v[k] - b.v[k]);
    return s * a.grid.cell_area();
}

double l2_distance(const DensityField& a, const DensityField& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) {
        const double d = a.v[k] - b.v[k];
        s += d * d;
    }
    return std::sqrt(s * a.grid.cell_area());
}

}  // namespace mot::diagnostics
