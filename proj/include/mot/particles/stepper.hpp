#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mot/core/config.hpp"
#include "mot/core/ensemble.hpp"
#include "mot/particles/drift.hpp"

namespace mot::particles {

// One Euler-Maruyama step: Z += drift * dt + sqrt(2 D dt) * xi, with xi the
// particle's own counter-stream normal pair for this step index, so the
// result is independent of evaluation order and any particle's path can be
// reproduced in isolation. Throws NumericalError naming the first particle
// whose position stops being finite.
void em_step(ParticleEnsemble& z, const std::vector<double>& dx,
             const std::vector<double>& dy, double dt, double D, std::uint64_t seed,
             std::uint64_t step);

struct RunOptions {
    DriftMode mode = DriftMode::kAuto;
    double cutoff = 0.0;  // <= 0: evaluator default
    // Called with the sampled initial condition at t = 0, then at every
    // record_interval crossing, and at t_end.
    std::function<void(double t, const ParticleEnsemble& z)> on_record;
};

// Simulate the interacting system from an initial sample of the configured
// density to cfg.t_end, returning the final ensemble. Every output is a pure
// function of (cfg, cfg.seed); t_end = 0 just samples the initial condition.
// Steps use cfg.dt with a shortened final step landing exactly on t_end.
ParticleEnsemble run_particles(const SimConfig& cfg, const RunOptions& opt = {});

}  // namespace mot::particles
