#pragma once

#include <vector>

#include "mot/core/config.hpp"
#include "mot/core/field.hpp"
#include "mot/particles/drift.hpp"

namespace mot::particles {

// External force sampled at snapshot times on one fixed grid, queried with
// bilinear interpolation in space (clamped at the cell-center hull) and
// linear interpolation in time between consecutive snapshots.
struct ForceTimeline {
    std::vector<double> times;
    std::vector<ForceField> fields;
};

struct CoupledSeries {
    std::vector<double> t;
    std::vector<double> mean_gap;  // mean over particles of |Z_i - Z~_i|
    std::vector<double> max_gap;
};

// Advance the interacting system and a mirror system driven by the timeline
// force from identical initial samples with identical per-particle noise, and
// record the position-gap statistics at the configured cadence (t = 0
// included; the initial gap is exactly zero by construction). The timeline
// must cover [0, t_end] with strictly increasing times spaced at most ten
// particle steps apart; anything else throws ConfigError.
CoupledSeries run_coupled(const SimConfig& cfg, const ForceTimeline& timeline,
                          DriftMode mode = DriftMode::kAuto);

}  // namespace mot::particles
