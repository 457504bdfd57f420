#pragma once

#include "mot/core/ensemble.hpp"
#include "mot/core/field.hpp"

namespace mot::diagnostics {

// Scalar observables over grid densities (rectangle-rule quadrature, the same
// rule the solver uses) and, where meaningful, over particle ensembles
// (uniform weights 1/N).

double total_mass(const DensityField& rho);

// (sum rho^p dxdy)^(1/p), p >= 1
double lp_norm(const DensityField& rho, double p);
double linf_norm(const DensityField& rho);

// m_k = sum (|x|^k + |y|^k) rho dxdy, k in {2, 4}
double moment_k(const DensityField& rho, int k);
double moment_k(const ParticleEnsemble& e, int k);

// sum rho ln rho over cells above a mass-scaled floor (z ln z -> 0 limit)
double entropy(const DensityField& rho);

// sum e^{lambda sqrt(1+x^2+y^2)} rho dxdy, evaluated in log-sum-exp style so
// large lambda cannot overflow
double exp_moment(const DensityField& rho, double lambda);

// <|xy|> - <|x|><|y|> with <.> the rho-weighted average after normalizing
// total mass to one; ensembles use plain sample averages.
double covariance_stat(const DensityField& rho);
double covariance_stat(const ParticleEnsemble& e);

// max over cells of |rho(x,y)-rho(-x,y)| and |rho(x,y)-rho(x,-y)|, via the
// exact index involution. Requires a symmetric grid.
double symmetry_defect(const DensityField& rho);

// distances used by the resolution and smoothing-width studies
double l1_distance(const DensityField& a, const DensityField& b);
double l2_distance(const DensityField& a, const DensityField& b);

}  // namespace mot::diagnostics
