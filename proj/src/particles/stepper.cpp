#include "mot/particles/stepper.hpp"

#include <cmath>
#include <string>

#include "mot/core/errors.hpp"
#include "mot/core/ic.hpp"
#include "mot/core/rng.hpp"

namespace mot::particles {

void em_step(ParticleEnsemble& z, const std::vector<double>& dx,
             const std::vector<double>& dy, double dt, double D, std::uint64_t seed,
             std::uint64_t step) {
    if (!(dt > 0.0)) throw NumericalError("particle step: dt must be positive");
    if (dx.size() != z.n() || dy.size() != z.n())
        throw ConfigError("particle step: drift arrays must match the ensemble size");
    const double s = std::sqrt(2.0 * D * dt);
    const std::size_t n = z.n();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [g1, g2] =
            CounterStream(seed, i).normal_pair(step, CounterStream::kNoise);
        z.x[i] += dx[i] * dt + s * g1;
        z.y[i] += dy[i] * dt + s * g2;
        if (!std::isfinite(z.x[i]) || !std::isfinite(z.y[i]))
            throw NumericalError("particle " + std::to_string(i) +
                                 " position became non-finite at step " +
                                 std::to_string(step));
    }
}

ParticleEnsemble run_particles(const SimConfig& cfg, const RunOptions& opt) {
    validate(cfg);
    ParticleEnsemble z = sample_particles_from_density(make_ic(cfg.grid(), cfg.ic),
                                                       cfg.n_particles, cfg.seed);
    if (opt.on_record) opt.on_record(0.0, z);
    if (!(cfg.t_end > 0.0)) return z;

    DriftEvaluator drift(cfg.eps, opt.mode, opt.cutoff);
    std::vector<double> dx, dy;
    double next_record = cfg.record_interval;
    const auto n_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        const double t0 = double(step) * cfg.dt;
        const double t1 = (step + 1 == n_steps) ? cfg.t_end : double(step + 1) * cfg.dt;
        drift.evaluate(z, dx, dy, cfg.ic.mass);
        em_step(z, dx, dy, t1 - t0, cfg.D, cfg.seed, step);
        if (opt.on_record) {
            const bool at_end = (step + 1 == n_steps);
            if (at_end || t1 >= next_record - 1e-12) {
                opt.on_record(t1, z);
                while (next_record <= t1 + 1e-12) next_record += cfg.record_interval;
            }
        }
    }
    return z;
}

}  // namespace mot::particles
