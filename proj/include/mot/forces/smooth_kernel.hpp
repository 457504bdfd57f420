#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace mot::forces {

// 1D building blocks of the smoothed attractive interaction at width eps:
// a mollified sign profile, the matching Gaussian bump (its derivative up to
// the factor 2), the antiderivative used for potentials, and the planar pair
// kernel assembled from them.
struct SmoothKernel {
    double eps;

    // argument scale: sgn(u) = erf(u * inv_sqrt2_eps)
    double inv_sqrt2_eps() const { return 1.0 / (eps * std::numbers::sqrt2); }

    double sgn(double u) const { return std::erf(u * inv_sqrt2_eps()); }

    // Gaussian with standard deviation eps, unit integral.
    double bump(double u) const {
        const double t = u / eps;
        return std::exp(-0.5 * t * t) / (eps * std::sqrt(2.0 * std::numbers::pi));
    }

    // antideriv'(u) == sgn(u); grows like |u| away from the core.
    double antideriv(double u) const {
        const double t = u * inv_sqrt2_eps();
        return u * std::erf(t) +
               eps * std::sqrt(2.0 / std::numbers::pi) * std::exp(-t * t);
    }

    // Peak magnitude of either force component for total mass `mass`.
    double force_bound(double mass) const {
        return mass / (eps * std::sqrt(2.0 * std::numbers::pi));
    }

    // Pair force on a particle from a unit-mass source at displacement
    // (ux, uy) = (target - source).
    std::pair<double, double> pair_force(double ux, double uy) const {
        return {-sgn(ux) * bump(uy), -bump(ux) * sgn(uy)};
    }
};

}  // namespace mot::forces
