#pragma once

#include <cstdint>
#include <string>

#include "mot/core/grid.hpp"

namespace mot {

// Initial condition: centered, mirror-symmetric densities.
struct IcSpec {
    enum class Kind { kGaussian, kGaussianAniso, kDisc };
    Kind kind = Kind::kGaussian;
    double sigma = 0.5;    // isotropic Gaussian
    double sigma_x = 0.5;  // anisotropic Gaussian
    double sigma_y = 0.25;
    double radius = 1.0;   // uniform disc
    double mass = 1.0;
};

enum class ForceMode { kNone, kSingular, kRegularized };
enum class Limiter { kNone, kMinmod };

// Full run description. A (SimConfig, seed) pair determines every output
// byte; parsing rejects unknown keys so configs cannot silently drift.
struct SimConfig {
    double D = 0.15;
    double eps = 0.1;
    double dt = 1e-3;   // particle time step; the grid solver adapts its own
    double t_end = 5.0;

    int nx = 100;
    int ny = 100;
    double x_min = -2.5, x_max = 2.5;
    double y_min = -2.5, y_max = 2.5;

    int n_particles = 10000;
    std::uint64_t seed = 1;

    IcSpec ic;
    ForceMode force_mode = ForceMode::kRegularized;
    Limiter limiter = Limiter::kNone;

    double record_interval = 0.05;    // diagnostics cadence (time units)
    double snapshot_interval = 0.0;   // 0: snapshots only at t=0 and t_end

    Grid2D grid() const { return Grid2D{nx, ny, x_min, x_max, y_min, y_max}; }
};

// key = value text, one pair per line, '#' comments. Unknown keys throw
// ConfigError naming the key; values are fully validated.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);
void validate(const SimConfig& cfg);

// Canonical serialization: fixed key order, round-trip exact values.
std::string to_text(const SimConfig& cfg);

}  // namespace mot
