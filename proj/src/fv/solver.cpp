#include "mot/fv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mot/core/errors.hpp"
#include "mot/core/ic.hpp"
#include "mot/simd/dispatch.hpp"

namespace mot::fv {
namespace {

// Stability-factor split: the advective part uses reconstruction states up to
// 1.5x a cell's own value, so 0.3 per axis keeps every Euler stage
// sign-preserving; the log-gradient diffusion obeys the usual parabolic bound.
constexpr double kCflDiffusive = 0.4;
constexpr double kCflAdvective = 0.3;

double minmod(double p, double q) {
    if (p > 0.0 && q > 0.0) return std::min(p, q);
    if (p < 0.0 && q < 0.0) return std::max(p, q);
    return 0.0;
}

}  // namespace

struct Solver::Xi {
    // x[j*(nx+1)+k]: velocity coefficient at the interface between cells
    // (k-1,j) and (k,j); boundary entries stay zero. Likewise y.
    std::vector<double> x, y;
    double amax_x = 0.0, amax_y = 0.0;
};

Solver::Solver(const SimConfig& cfg) : Solver(cfg, make_ic(cfg.grid(), cfg.ic)) {}

Solver::Solver(const SimConfig& cfg, DensityField rho0) : cfg_(cfg), rho_(std::move(rho0)) {
    validate(cfg_);
    if (rho_.grid.nx != cfg_.nx || rho_.grid.ny != cfg_.ny)
        throw ConfigError("initial density grid does not match the configuration");
    mass0_ = mass();
    const double area = (cfg_.x_max - cfg_.x_min) * (cfg_.y_max - cfg_.y_min);
    floor_ = 1e-12 * mass0_ / area;
    if (!(floor_ > 0.0)) throw ConfigError("initial mass must be positive");
}

double Solver::mass() const {
    double s = 0.0;
    for (double v : rho_.v) s += v;
    return s * rho_.grid.cell_area();
}

void Solver::build_xi(const DensityField& from, Xi& xi) const {
    const Grid2D& g = from.grid;
    const int nx = g.nx, ny = g.ny;
    xi.x.assign(std::size_t(nx + 1) * ny, 0.0);
    xi.y.assign(std::size_t(nx) * (ny + 1), 0.0);
    xi.amax_x = 0.0;
    xi.amax_y = 0.0;

    // log rho with the floor applied inside the log only
    std::vector<double> lnr(from.v.size());
    {
        std::vector<double> fl(from.v.size());
        for (std::size_t k = 0; k < fl.size(); ++k) fl[k] = std::max(from.v[k], floor_);
        simd::ops().vlog(fl.data(), lnr.data(), fl.size());
    }

    const bool has_force = cfg_.force_mode != ForceMode::kNone;
    forces::Potentials pot;
    if (has_force) pot = forces::potentials(from, cfg_.force_mode, cfg_.eps);

    const double inv_dx = 1.0 / g.dx(), inv_dy = 1.0 / g.dy();
    for (int j = 0; j < ny; ++j) {
        const double* ln = lnr.data() + std::size_t(j) * nx;
        double* xr = xi.x.data() + std::size_t(j) * (nx + 1);
        for (int k = 1; k < nx; ++k) {
            double s = cfg_.D * (ln[k] - ln[k - 1]);
            if (has_force) s += pot.U.at(k, j) - pot.U.at(k - 1, j);
            xr[k] = s * inv_dx;
            xi.amax_x = std::max(xi.amax_x, std::abs(xr[k]));
        }
    }
    for (int j = 1; j < ny; ++j) {
        const double* lo = lnr.data() + std::size_t(j - 1) * nx;
        const double* hi = lnr.data() + std::size_t(j) * nx;
        double* yr = xi.y.data() + std::size_t(j) * nx;
        for (int i = 0; i < nx; ++i) {
            double s = cfg_.D * (hi[i] - lo[i]);
            if (has_force) s += pot.V.at(i, j) - pot.V.at(i, j - 1);
            yr[i] = s * inv_dy;
            xi.amax_y = std::max(xi.amax_y, std::abs(yr[i]));
        }
    }
}

void Solver::apply_stage(const DensityField& from, DensityField& to, double dt,
                         double& clipped) const {
    const Grid2D& g = from.grid;
    const int nx = g.nx, ny = g.ny;
    Xi xi;
    build_xi(from, xi);

    const bool muscl = cfg_.limiter == Limiter::kMinmod;
    const double cx = dt / g.dx(), cy = dt / g.dy();

    // time-scaled upwind fluxes; boundary interfaces stay zero (closed box)
    std::vector<double> gx(std::size_t(nx + 1) * ny, 0.0);
    std::vector<double> gy(std::size_t(nx) * (ny + 1), 0.0);

    for (int j = 0; j < ny; ++j) {
        const double* r = from.row(j);
        const double* xr = xi.x.data() + std::size_t(j) * (nx + 1);
        double* gr = gx.data() + std::size_t(j) * (nx + 1);
        for (int k = 1; k < nx; ++k) {
            const double v = -xr[k];  // transport moves down the potential
            if (v == 0.0) continue;
            double state;
            if (v > 0.0) {
                double s = 0.0;
                if (muscl) {
                    const double dm = (k >= 2) ? r[k - 1] - r[k - 2] : 0.0;
                    s = minmod(dm, r[k] - r[k - 1]);
                }
                state = r[k - 1] + 0.5 * s;
            } else {
                double s = 0.0;
                if (muscl) {
                    const double dp = (k + 1 < nx) ? r[k + 1] - r[k] : 0.0;
                    s = minmod(r[k] - r[k - 1], dp);
                }
                state = r[k] - 0.5 * s;
            }
            gr[k] = cx * (v * state);
        }
    }
    for (int j = 1; j < ny; ++j) {
        const double* lo = from.row(j - 1);
        const double* hi = from.row(j);
        const double* yr = xi.y.data() + std::size_t(j) * nx;
        double* gr = gy.data() + std::size_t(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double v = -yr[i];
            if (v == 0.0) continue;
            double state;
            if (v > 0.0) {
                double s = 0.0;
                if (muscl) {
                    const double dm = (j >= 2) ? lo[i] - from.at(i, j - 2) : 0.0;
                    s = minmod(dm, hi[i] - lo[i]);
                }
                state = lo[i] + 0.5 * s;
            } else {
                double s = 0.0;
                if (muscl) {
                    const double dp = (j + 1 < ny) ? from.at(i, j + 1) - hi[i] : 0.0;
                    s = minmod(hi[i] - lo[i], dp);
                }
                state = hi[i] - 0.5 * s;
            }
            gr[i] = cy * (v * state);
        }
    }

    const double area = g.cell_area();
    for (int j = 0; j < ny; ++j) {
        const double* r = from.row(j);
        double* o = to.row(j);
        const double* grx = gx.data() + std::size_t(j) * (nx + 1);
        const double* glo = gy.data() + std::size_t(j) * nx;
        const double* ghi = gy.data() + std::size_t(j + 1) * nx;
        for (int i = 0; i < nx; ++i) {
            double nv = r[i] - (grx[i + 1] - grx[i]) - (ghi[i] - glo[i]);
            if (nv < 0.0) {
                clipped += -nv * area;
                nv = 0.0;
            }
            o[i] = nv;
        }
    }
}

double Solver::stable_dt() const {
    Xi xi;
    build_xi(rho_, xi);
    const Grid2D& g = rho_.grid;
    double dt = cfg_.t_end > 0.0 ? cfg_.t_end : 1.0;
    if (cfg_.D > 0.0) {
        const double h = std::min(g.dx(), g.dy());
        dt = std::min(dt, kCflDiffusive * h * h / (4.0 * cfg_.D));
    }
    if (xi.amax_x > 0.0) dt = std::min(dt, kCflAdvective * g.dx() / xi.amax_x);
    if (xi.amax_y > 0.0) dt = std::min(dt, kCflAdvective * g.dy() / xi.amax_y);
    return dt;
}

StepInfo Solver::step(double dt) {
    if (!(dt > 0.0)) throw NumericalError("step size must be positive");
    DensityField mid(rho_.grid), fin(rho_.grid);
    double clipped = 0.0;
    apply_stage(rho_, mid, dt, clipped);
    apply_stage(mid, fin, dt, clipped);
    for (std::size_t k = 0; k < rho_.v.size(); ++k)
        rho_.v[k] = 0.5 * (rho_.v[k] + fin.v[k]);
    t_ += dt;

    const double m = mass();
    if (!std::isfinite(m))
        throw NumericalError("density lost finiteness at t=" + std::to_string(t_));
    StepInfo info{t_, dt, m, clipped};
    if (on_step) on_step(info);
    return info;
}

void Solver::advance_to(double t_target) {
    while (t_ < t_target - 1e-14) {
        double dt = std::min(cfg_.dt, stable_dt());
        dt = std::min(dt, t_target - t_);
        step(dt);
    }
    t_ = t_target;  // absorb the sub-1e-14 remainder
}

ForceField Solver::current_force() const {
    if (cfg_.force_mode == ForceMode::kNone) {
        return ForceField{DensityField(rho_.grid), DensityField(rho_.grid)};
    }
    return forces::force_field(rho_, cfg_.force_mode, cfg_.eps);
}

}  // namespace mot::fv
