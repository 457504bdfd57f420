#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace mot {

// Counter-based RNG: Philox4x64 with 10 rounds. A (key, counter) pair maps to
// four 64-bit words with no sequential state, so any particle/stream can be
// evaluated at any step in any order (or from any thread) with identical
// results. Verified against reference vectors in the unit tests.
namespace philox {

std::array<std::uint64_t, 4> block(std::uint64_t key0, std::uint64_t key1,
                                   const std::array<std::uint64_t, 4>& counter);

// Uniform in (0,1): top 52 bits mapped to the odd multiples of 2^-53, which
// are exactly representable, so neither endpoint can ever be produced.
inline double to_unit(std::uint64_t w) {
    return static_cast<double>(w >> 12) * 0x1.0p-52 + 0x1.0p-53;
}

}  // namespace philox

// One logical random stream, keyed by (seed, stream id). Counter word 1 is a
// purpose tag so different consumers of the same stream never collide.
class CounterStream {
  public:
    enum Purpose : std::uint64_t {
        kNoise = 0,     // Brownian increments, counter0 = step index
        kSample = 1,    // initial-condition sampling
        kResample = 2,  // measure resampling
        kProjection = 3 // sliced-transport directions
    };

    CounterStream(std::uint64_t seed, std::uint64_t stream_id)
        : key0_(seed), key1_(stream_id) {}

    std::array<std::uint64_t, 4> raw(std::uint64_t counter, Purpose purpose) const {
        return philox::block(key0_, key1_, {counter, static_cast<std::uint64_t>(purpose), 0, 0});
    }

    // Independent standard normals via Box-Muller (rejection-free, so the
    // draw count per counter is fixed).
    std::pair<double, double> normal_pair(std::uint64_t counter, Purpose purpose) const;

    double uniform(std::uint64_t counter, Purpose purpose, int word = 0) const {
        return philox::to_unit(raw(counter, purpose)[word]);
    }

  private:
    std::uint64_t key0_;
    std::uint64_t key1_;
};

}  // namespace mot
