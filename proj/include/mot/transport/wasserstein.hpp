#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mot/core/ensemble.hpp"
#include "mot/core/field.hpp"

namespace mot::transport {

// Finitely supported probability measure in the plane. Weights are
// nonnegative and sum to one within 1e-12; the constructors normalize.
struct DiscreteMeasure {
    std::vector<double> x, y, w;
    std::size_t size() const { return w.size(); }
};

// Atoms at the nonzero cell centers, weights proportional to cell masses.
// Throws ConfigError on negative cells or an empty (zero-mass) field.
DiscreteMeasure from_grid(const DensityField& rho);

// Sum 2x2 cell blocks until at most max_atoms cells carry mass, then convert;
// atom positions are the coarse grid's own cell centers.
DiscreteMeasure from_grid_coarsened(const DensityField& rho,
                                    std::size_t max_atoms = 512);

// Equal-weight atoms at the particle positions.
DiscreteMeasure from_ensemble(const ParticleEnsemble& z);

// n independent draws from mu by inverse-CDF sampling over the atom weights
// (atom positions are reused verbatim), giving an equal-weight measure.
// Deterministic in (seed, draw index), so any draw can be reproduced alone.
DiscreteMeasure resample_to_equal(const DiscreteMeasure& mu, std::size_t n,
                                  std::uint64_t seed);

// Exact 1-Wasserstein distance between equal-count samples on the line with
// uniform weights: the mean absolute difference of the sorted values.
// Throws ConfigError on mismatched or empty samples.
double w1_exact_1d(std::vector<double> a, std::vector<double> b);

// Largest instance the exact planar solver accepts, per side.
inline constexpr std::size_t kExactAtomCap = 512;

// Exact planar 1-Wasserstein distance by successive-shortest-path min-cost
// flow with Dijkstra potentials. The optimal primal/dual pair must close to
// 1e-9 or the call throws NumericalError; instances beyond kExactAtomCap
// throw ConfigError pointing at sliced_w1.
double w1_exact_small(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct SlicedW1 {
    double value;      // mean over directions of the projected 1D distance
    double std_error;  // sample standard error of that mean
};

// Monte Carlo sliced distance: directions theta_k = 2 pi u_k from the
// projection stream of (seed, 0), so the result is reproducible for a given
// seed. Each projected distance is computed exactly on the weighted atoms
// (integral of the CDF gap) and is a lower bound for the planar distance,
// hence so is the average.
SlicedW1 sliced_w1(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   int n_proj = 64, std::uint64_t seed = 0);

}  // namespace mot::transport
