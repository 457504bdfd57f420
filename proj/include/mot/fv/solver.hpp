#pragma once

#include <functional>

#include "mot/core/config.hpp"
#include "mot/core/field.hpp"
#include "mot/forces/grid_force.hpp"

namespace mot::fv {

struct StepInfo {
    double t;        // time after the step
    double dt;
    double mass;     // total mass after the step
    double clipped;  // mass added by clipping negatives this step (absolute)
};

// Finite-volume evolution of drho/dt = div(D grad rho - F[rho] rho) in a
// closed box (zero boundary flux). Interface velocities combine the
// log-density gradient with potential differences; transport is upwinded
// against that velocity, optionally with minmod-limited reconstruction, and
// stepped with two-stage Heun. Fluxes always use the true density; the
// positive floor enters the logarithm only.
class Solver {
  public:
    explicit Solver(const SimConfig& cfg);
    Solver(const SimConfig& cfg, DensityField rho0);

    const DensityField& density() const { return rho_; }
    double time() const { return t_; }
    double mass() const;
    double initial_mass() const { return mass0_; }
    const SimConfig& config() const { return cfg_; }

    // Largest dt the current state admits (diffusive and advective bounds).
    double stable_dt() const;

    // One Heun step of the given size. Throws NumericalError on non-finite
    // states.
    StepInfo step(double dt);

    // Advance to t_target with dt = min(config dt, stability bound,
    // remaining time); invokes on_step after every step.
    void advance_to(double t_target);

    // Force field of the current density under the configured interaction.
    ForceField current_force() const;

    std::function<void(const StepInfo&)> on_step;

  private:
    SimConfig cfg_;
    DensityField rho_;
    double t_ = 0.0;
    double mass0_ = 0.0;
    double floor_ = 0.0;

    struct Xi;  // interface velocities of one stage
    void build_xi(const DensityField& from, Xi& xi) const;
    // to = from + dt * L(from); accumulates clipped mass
    void apply_stage(const DensityField& from, DensityField& to, double dt,
                     double& clipped) const;
};

}  // namespace mot::fv
