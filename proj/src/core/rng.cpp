#include "mot/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace mot {
namespace philox {
namespace {

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline std::array<std::uint64_t, 4> round_once(const std::array<std::uint64_t, 4>& c,
                                               std::uint64_t k0, std::uint64_t k1) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint64_t, 4> block(std::uint64_t key0, std::uint64_t key1,
                                   const std::array<std::uint64_t, 4>& counter) {
    std::array<std::uint64_t, 4> c = counter;
    std::uint64_t k0 = key0, k1 = key1;
    for (int r = 0; r < 10; ++r) {
        if (r != 0) {
            k0 += kW0;
            k1 += kW1;
        }
        c = round_once(c, k0, k1);
    }
    return c;
}

}  // namespace philox

std::pair<double, double> CounterStream::normal_pair(std::uint64_t counter, Purpose purpose) const {
    const auto w = raw(counter, purpose);
    const double u1 = philox::to_unit(w[0]);
    const double u2 = philox::to_unit(w[1]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace mot
