#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mot/core/config.hpp"
#include "mot/core/field.hpp"
#include "mot/particles/coupled.hpp"

namespace mot::app {

// Options shared by every preset. Unset optionals fall back first to the
// config file (when given) and otherwise to the preset's defaults.
struct RunOptions {
    std::string config_path;  // empty: preset defaults
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> D, eps, t_end;
    std::optional<int> n_particles;
    std::optional<int> grid;  // square nx = ny override

    std::vector<double> D_list;    // norms ladder
    std::vector<double> eps_list;  // eps-rate ladder
    std::vector<int> n_list;       // n-rate / coupling ladder
    std::optional<int> n_seeds;    // seed-ladder width

    std::string fv_dir;    // coupling: directory with the grid-run snapshots
    bool make_fv = false;  // coupling: produce that directory first
};

// Runs one preset (contour, norms, n-rate, eps-rate, coupling, heat-check),
// writing every output under opt.out_dir. Returns 0; failures are thrown
// (ConfigError / NumericalError / IoError) for the caller to map to exit
// codes. All outputs are a pure function of (config, seed); wall-clock
// timings go to stdout only.
int run_preset(const std::string& name, const RunOptions& opt);

// The fully-resolved configuration a preset would run with.
SimConfig base_config(const std::string& preset, const RunOptions& opt);

// ---- building blocks, exposed for the verification suite ----

// One grid run with the standard observables sampled at the record cadence
// (t = 0 and t_end always included) and per-step conservation extrema.
struct ObservableSeries {
    std::vector<double> t, mass, l2, linf, m2, entropy, expm, cov, sym;
    double mass_drift_max = 0.0;  // max |mass - mass0| / mass0 over steps
    double clip_frac_max = 0.0;   // max clipped / mass over steps
    DensityField final_density{Grid2D{4, 4, 0.0, 1.0, 0.0, 1.0}};
};
ObservableSeries run_fv_series(const SimConfig& cfg, double lambda);

// Closed-box analytic solution of the pure-diffusion problem at time t:
// per-axis Gaussian image sums across the reflecting walls, evaluated at
// cell centers and renormalized to the configured mass. Requires a centered
// box and the isotropic Gaussian initial condition.
DensityField heat_box_reference(const SimConfig& cfg, double t);

struct HeatCheck {
    double err_coarse = 0.0;  // relative L2 error on the configured grid
    double err_fine = 0.0;    // and on the 2x-refined grid
    double ratio = 0.0;       // err_coarse / err_fine
};
HeatCheck heat_check_core(const SimConfig& cfg);

struct EpsRateRow {
    double eps;
    double l1_half;      // L1 gap to the eps/2 run (NaN when absent)
    double l1_singular;  // L1 gap to the unregularized run
};
struct EpsRate {
    std::vector<EpsRateRow> rows;  // ladder order
    double slope_half = 0.0;       // log-log slopes of the gaps vs eps
    double slope_singular = 0.0;
};
EpsRate eps_rate_core(const SimConfig& base, const std::vector<double>& ladder);

struct NRateRun {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<double> t, cov;    // particle covariance trajectory
    double w1_sliced = 0.0;        // terminal distances to the grid density
    double w1_exact_coarse = 0.0;
};
struct NRate {
    std::vector<double> fv_t, fv_cov;  // grid-reference trajectory
    std::vector<NRateRun> runs;        // ladder-major, seed-minor order
};
NRate n_rate_core(const SimConfig& base, const std::vector<int>& ladder, int n_seeds);

// Grid run sampled every `interval` into a force timeline for the coupled
// system; when dir is non-empty the density snapshots and a manifest are
// also written there.
particles::ForceTimeline make_force_timeline(const SimConfig& cfg, double interval,
                                             const std::string& dir);
// Rebuilds the timeline from a directory produced by make_force_timeline,
// computing forces at the given smoothing width.
particles::ForceTimeline load_force_timeline(const std::string& dir, double eps);

struct CouplingRun {
    int n = 0;
    std::uint64_t seed = 0;
    particles::CoupledSeries series;
};
std::vector<CouplingRun> coupling_core(const SimConfig& base, const std::vector<int>& ladder,
                                       int n_seeds, const particles::ForceTimeline& timeline);

}  // namespace mot::app
