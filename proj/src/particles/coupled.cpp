#include "mot/particles/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mot/core/errors.hpp"
#include "mot/core/ic.hpp"
#include "mot/particles/stepper.hpp"

namespace mot::particles {

namespace {

// Bilinear sample at (px, py), clamped to the cell-center hull.
double bilinear(const DensityField& f, double px, double py) {
    const Grid2D& g = f.grid;
    const double s = std::clamp((px - g.x(0)) / g.dx(), 0.0, double(g.nx - 1));
    const double r = std::clamp((py - g.y(0)) / g.dy(), 0.0, double(g.ny - 1));
    const int i0 = std::min(static_cast<int>(s), g.nx - 2);
    const int j0 = std::min(static_cast<int>(r), g.ny - 2);
    const double u = s - i0, v = r - j0;
    return (1.0 - u) * (1.0 - v) * f.at(i0, j0) + u * (1.0 - v) * f.at(i0 + 1, j0) +
           (1.0 - u) * v * f.at(i0, j0 + 1) + u * v * f.at(i0 + 1, j0 + 1);
}

void check_timeline(const SimConfig& cfg, const ForceTimeline& tl) {
    const std::size_t m = tl.times.size();
    if (m < 2 || tl.fields.size() != m)
        throw ConfigError(
            "coupled run: timeline needs at least two snapshots with matching times");
    if (tl.times.front() > 1e-12 || tl.times.back() < cfg.t_end - 1e-12)
        throw ConfigError("coupled run: timeline must cover the full time range");
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (!(tl.times[k + 1] > tl.times[k]))
            throw ConfigError("coupled run: snapshot times must be strictly increasing");
        if (tl.times[k + 1] - tl.times[k] > 10.0 * cfg.dt * (1.0 + 1e-9))
            throw ConfigError(
                "coupled run: snapshot spacing exceeds ten particle steps");
    }
    const Grid2D& g = tl.fields.front().fx.grid;
    if (g.nx < 2 || g.ny < 2)
        throw ConfigError("coupled run: timeline grid must be at least 2x2");
    for (const auto& f : tl.fields)
        if (!(f.fx.grid == g) || !(f.fy.grid == g))
            throw ConfigError("coupled run: timeline snapshots must share one grid");
}

}  // namespace

CoupledSeries run_coupled(const SimConfig& cfg, const ForceTimeline& tl,
                          DriftMode mode) {
    validate(cfg);
    check_timeline(cfg, tl);

    ParticleEnsemble z = sample_particles_from_density(make_ic(cfg.grid(), cfg.ic),
                                                       cfg.n_particles, cfg.seed);
    ParticleEnsemble zm = z;  // mirror system, identical start

    CoupledSeries out;
    const std::size_t n = z.n();
    auto record = [&](double t) {
        double sum = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = std::hypot(z.x[i] - zm.x[i], z.y[i] - zm.y[i]);
            sum += g;
            worst = std::max(worst, g);
        }
        out.t.push_back(t);
        out.mean_gap.push_back(sum / double(n));
        out.max_gap.push_back(worst);
    };
    record(0.0);
    if (!(cfg.t_end > 0.0)) return out;

    DriftEvaluator drift(cfg.eps, mode);
    std::vector<double> dx, dy, mx(n), my(n);
    std::size_t seg = 0;
    double next_record = cfg.record_interval;
    const auto n_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        const double t0 = double(step) * cfg.dt;
        const double t1 = (step + 1 == n_steps) ? cfg.t_end : double(step + 1) * cfg.dt;

        drift.evaluate(z, dx, dy, cfg.ic.mass);

        while (seg + 2 < tl.times.size() && tl.times[seg + 1] < t0) ++seg;
        const double span = tl.times[seg + 1] - tl.times[seg];
        const double th = std::clamp((t0 - tl.times[seg]) / span, 0.0, 1.0);
        const ForceField& fa = tl.fields[seg];
        const ForceField& fb = tl.fields[seg + 1];
        for (std::size_t i = 0; i < n; ++i) {
            mx[i] = (1.0 - th) * bilinear(fa.fx, zm.x[i], zm.y[i]) +
                    th * bilinear(fb.fx, zm.x[i], zm.y[i]);
            my[i] = (1.0 - th) * bilinear(fa.fy, zm.x[i], zm.y[i]) +
                    th * bilinear(fb.fy, zm.x[i], zm.y[i]);
        }

        // identical seeds and step indices give both systems the same noise
        em_step(z, dx, dy, t1 - t0, cfg.D, cfg.seed, step);
        em_step(zm, mx, my, t1 - t0, cfg.D, cfg.seed, step);

        const bool at_end = (step + 1 == n_steps);
        if (at_end || t1 >= next_record - 1e-12) {
            record(t1);
            while (next_record <= t1 + 1e-12) next_record += cfg.record_interval;
        }
    }
    return out;
}

}  // namespace mot::particles
