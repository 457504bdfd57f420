#pragma once

#include <cstddef>

namespace mot::simd {

// Data-parallel kernels behind the hot loops. Every entry has a scalar
// reference implementation (libm); wider tiers are equivalence-tested against
// it. The active tier is selected once per process, so a run never mixes
// tiers and results are reproducible on a given machine/build.
struct Ops {
    const char* name;

    // Elementwise transcendentals. vlog requires x > 0.
    void (*vexp)(const double* x, double* out, std::size_t n);
    void (*vlog)(const double* x, double* out, std::size_t n);
    void (*verf)(const double* x, double* out, std::size_t n);

    // Fused attractive pair-interaction row. For k in [0,n):
    //   u  = xs[k] - x0,  w  = ys[k] - y0
    //   rx = quantize(erf(u*a) * exp(-(w*a)^2) * scale)   (ry symmetric in u,w)
    // with a = inv_sqrt2_eps and quantize() rounding onto the binary grid
    // kDepositQuantum. Accumulates sum_x += rx, sum_y += ry and
    // acc_x[k] -= rx, acc_y[k] -= ry. Because the deposits live on a shared
    // power-of-two grid and |scale| <= kDepositCapacity/(n+1), every
    // accumulation is exact: the two sides of a pair are exact negations and
    // per-particle drift sums carry no rounding error, so total drift
    // telescopes to exactly zero in any summation order.
    void (*pair_row)(double x0, double y0, const double* xs, const double* ys,
                     double* acc_x, double* acc_y, std::size_t n, double inv_sqrt2_eps,
                     double scale, double* sum_x, double* sum_y);

    // One-component variant for slab sweeps: only rx / sum_x / acc_x.
    void (*pair_row_one)(double x0, double y0, const double* xs, const double* ys,
                         double* acc_x, std::size_t n, double inv_sqrt2_eps,
                         double scale, double* sum_x);
};

// Pair deposits are rounded to integer multiples of this quantum via the
// add-subtract trick with kDepositRounder (1.5 * 2^52 * quantum). Sums of
// such multiples stay exact while |sum| < kDepositCapacity, which covers the
// mean-field drift bound mass/(eps*sqrt(2 pi)) for any eps of interest.
inline constexpr double kDepositQuantum = 0x1p-46;
inline constexpr double kDepositRounder = 0x1.8p6;  // 96.0
inline constexpr double kDepositCapacity = 0x1p7;   // 128.0

enum class Tier { kScalar = 0, kAvx2 = 1, kAvx512 = 2 };

bool tier_available(Tier t);
const Ops& ops_for(Tier t);  // throws if unavailable (tests/benchmarks)

// Best available tier, overridable with MOT_SIMD=scalar|avx2|avx512
// (unavailable requests fall back with a stderr warning).
Tier active_tier();
const Ops& ops();

}  // namespace mot::simd
