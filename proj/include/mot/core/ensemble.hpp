#pragma once

#include <cstddef>
#include <vector>

namespace mot {

// Particle positions, structure-of-arrays. Each particle carries weight 1/n
// in the mean-field normalization; positions live in free space (no box).
struct ParticleEnsemble {
    std::vector<double> x;
    std::vector<double> y;

    ParticleEnsemble() = default;
    explicit ParticleEnsemble(std::size_t n) : x(n, 0.0), y(n, 0.0) {}

    std::size_t n() const { return x.size(); }
};

}  // namespace mot
