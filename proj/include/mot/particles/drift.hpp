#pragma once

#include <cstddef>
#include <vector>

#include "mot/core/ensemble.hpp"

namespace mot::particles {

// How pair interactions are enumerated. Both modes quantize every pair
// deposit onto the shared binary grid (see simd/dispatch.hpp), so within one
// SIMD tier the summed drift of the whole ensemble is exactly zero in either
// mode, and results do not depend on accumulation order.
enum class DriftMode {
    kDirectN2,  // every ordered pair once, O(n^2)
    kCellList,  // sorted sweep per component, skipping pairs outside the cutoff
    kAuto       // kCellList for large ensembles, kDirectN2 otherwise
};

// Mean interaction drift of the particle system: particle i receives the
// average over partners j of the product kernel
//   K_x = erf(dx/(eps sqrt2)) * exp(-(dy/(eps sqrt2))^2) / (eps sqrt(2 pi))
// (and symmetrically for K_y), with dx = x_j - x_i, i.e. attraction toward
// the partner. The x component is long-range in x but Gaussian-localized in
// y, so the sweep mode sorts by the localized coordinate and visits only a
// contiguous window per particle: beyond `cutoff` the Gaussian factor is
// below half a deposit quantum and the direct sum would round it to zero
// anyway. With cutoff >= 9 * eps the sweep therefore reproduces the direct
// sum bit for bit; the default 6 * eps keeps the two modes equal to ~1e-9
// per component on unit-scale clouds.
class DriftEvaluator {
  public:
    // cutoff <= 0 selects the default 6 * eps.
    explicit DriftEvaluator(double eps, DriftMode mode = DriftMode::kAuto,
                            double cutoff = 0.0);

    // Overwrites dx, dy (resized to z.n()) with the drift components. `mass`
    // is the total physical mass the ensemble represents; the per-pair weight
    // is mass / n. Throws ConfigError if the implied pair weight exceeds the
    // deposit-grid capacity (eps astronomically small).
    void evaluate(const ParticleEnsemble& z, std::vector<double>& dx,
                  std::vector<double>& dy, double mass = 1.0);

    double eps() const { return eps_; }
    double cutoff() const { return cutoff_; }
    DriftMode mode() const { return mode_; }

  private:
    void direct(const ParticleEnsemble& z, std::vector<double>& dx,
                std::vector<double>& dy, double scale);
    void sweep_component(const std::vector<double>& erf_coord,
                         const std::vector<double>& gauss_coord,
                         std::vector<double>& out, double scale);

    double eps_;
    DriftMode mode_;
    double cutoff_;

    // scratch reused across calls
    std::vector<std::size_t> ord_;
    std::vector<double> sc_, sg_, acc_;
};

}  // namespace mot::particles
