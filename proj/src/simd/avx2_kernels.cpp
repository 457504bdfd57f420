#include "mot/simd/dispatch.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

#include "poly_coeffs.hpp"

// AVX2+FMA tier. Compiled with function-level target attributes so the TU
// builds without global -mavx2; only dispatched-to code uses the ISA.
// Array-op tails (< 4 lanes) fall back to libm, which is also the scalar
// reference, so tails never widen the equivalence gap.

#define MOT_AVX2 __attribute__((target("avx2,fma")))

namespace mot::simd {
namespace {

MOT_AVX2 inline __m256d exp4(__m256d x) {
    const __m256d hi = _mm256_set1_pd(poly::kExpClamp);
    x = _mm256_min_pd(x, hi);
    x = _mm256_max_pd(x, _mm256_sub_pd(_mm256_setzero_pd(), hi));
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(poly::kLog2E)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(poly::kExpC1), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(poly::kExpC2), r);
    __m256d p = _mm256_set1_pd(poly::kExpC[13]);
    for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(poly::kExpC[k]));
    const __m128i ni = _mm256_cvtpd_epi32(n);
    const __m256i nl = _mm256_cvtepi32_epi64(ni);
    const __m256i pw = _mm256_slli_epi64(_mm256_add_epi64(nl, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(pw));
}

// erf with the matching Gaussian precomputed: z = t*t, g = exp(-z).
MOT_AVX2 inline __m256d erf4_with_g(__m256d t, __m256d z, __m256d g) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d signmask = _mm256_set1_pd(-0.0);

    __m256d pa = _mm256_set1_pd(poly::kErfA[10]);
    for (int k = 9; k >= 0; --k) pa = _mm256_fmadd_pd(pa, z, _mm256_set1_pd(poly::kErfA[k]));
    const __m256d small = _mm256_mul_pd(t, pa);

    const __m256d at = _mm256_andnot_pd(signmask, t);
    __m256d u = _mm256_div_pd(one, at);
    u = _mm256_min_pd(u, one);
    u = _mm256_max_pd(u, _mm256_set1_pd(0.16));
    const __m256d s =
        _mm256_fmadd_pd(u, _mm256_set1_pd(poly::kErfBScale), _mm256_set1_pd(poly::kErfBShift));
    __m256d pb = _mm256_set1_pd(poly::kErfB[22]);
    for (int k = 21; k >= 0; --k) pb = _mm256_fmadd_pd(pb, s, _mm256_set1_pd(poly::kErfB[k]));
    __m256d large = _mm256_fnmadd_pd(g, pb, one);
    large = _mm256_or_pd(large, _mm256_and_pd(t, signmask));

    const __m256d pick_small = _mm256_cmp_pd(at, one, _CMP_LT_OQ);
    return _mm256_blendv_pd(large, small, pick_small);
}

MOT_AVX2 inline double reduce4(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

MOT_AVX2 inline __m256d tail_mask_pd(std::size_t rem) {
    const __m256i m = _mm256_setr_epi64x(rem > 0 ? -1 : 0, rem > 1 ? -1 : 0,
                                         rem > 2 ? -1 : 0, 0);
    return _mm256_castsi256_pd(m);
}

MOT_AVX2 void vexp_avx2(const double* x, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, exp4(_mm256_loadu_pd(x + k)));
    for (; k < n; ++k) out[k] = std::exp(x[k]);
}

MOT_AVX2 inline __m256d log4(__m256d x) {
    const __m256i ix = _mm256_castpd_si256(x);
    const __m256i expo =
        _mm256_sub_epi64(_mm256_srli_epi64(ix, 52), _mm256_set1_epi64x(1022));
    const __m256i mant = _mm256_or_si256(
        _mm256_and_si256(ix, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)),
        _mm256_set1_epi64x(0x3FE0000000000000ll));
    __m256d m = _mm256_castsi256_pd(mant);  // [0.5, 1)

    const __m256d sqrt_half = _mm256_set1_pd(0.70710678118654752440);
    const __m256d lt = _mm256_cmp_pd(m, sqrt_half, _CMP_LT_OQ);
    m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lt);

    // int64 exponent lanes -> double via int32 gather (values are tiny)
    const __m256i lo32 = _mm256_permutevar8x32_epi32(expo, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    __m256d ed = _mm256_cvtepi32_pd(_mm256_castsi256_si128(lo32));
    ed = _mm256_blendv_pd(ed, _mm256_sub_pd(ed, _mm256_set1_pd(1.0)), lt);

    const __m256d t = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    __m256d p = _mm256_set1_pd(poly::kLogL[16]);
    for (int k = 15; k >= 0; --k) p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(poly::kLogL[k]));
    const __m256d r = _mm256_mul_pd(t, p);
    return _mm256_fmadd_pd(ed, _mm256_set1_pd(poly::kLn2Hi),
                           _mm256_fmadd_pd(ed, _mm256_set1_pd(poly::kLn2Lo), r));
}

MOT_AVX2 void vlog_avx2(const double* x, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, log4(_mm256_loadu_pd(x + k)));
    for (; k < n; ++k) out[k] = std::log(x[k]);
}

MOT_AVX2 void verf_avx2(const double* x, double* out, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d t = _mm256_loadu_pd(x + k);
        const __m256d z = _mm256_mul_pd(t, t);
        const __m256d at = _mm256_andnot_pd(signmask, t);
        __m256d g = _mm256_setzero_pd();
        if (_mm256_movemask_pd(_mm256_cmp_pd(at, _mm256_set1_pd(1.0), _CMP_GE_OQ)) != 0)
            g = exp4(_mm256_sub_pd(_mm256_setzero_pd(), z));
        _mm256_storeu_pd(out + k, erf4_with_g(t, z, g));
    }
    for (; k < n; ++k) out[k] = std::erf(x[k]);
}

// Round each lane onto the kDepositQuantum grid after applying `scale`.
MOT_AVX2 inline __m256d quantize4(__m256d v, __m256d scale, __m256d rounder) {
    const __m256d c = _mm256_mul_pd(v, scale);
    return _mm256_sub_pd(_mm256_add_pd(c, rounder), rounder);
}

MOT_AVX2 void pair_row_avx2(double x0, double y0, const double* xs, const double* ys,
                            double* acc_x, double* acc_y, std::size_t n, double a_,
                            double scale_, double* sum_x, double* sum_y) {
    const __m256d a = _mm256_set1_pd(a_);
    const __m256d scale = _mm256_set1_pd(scale_);
    const __m256d rounder = _mm256_set1_pd(kDepositRounder);
    const __m256d x0v = _mm256_set1_pd(x0), y0v = _mm256_set1_pd(y0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d sx = zero, sy = zero;

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d u = _mm256_sub_pd(_mm256_loadu_pd(xs + k), x0v);
        const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(ys + k), y0v);
        const __m256d tu = _mm256_mul_pd(u, a), tw = _mm256_mul_pd(w, a);
        const __m256d zu = _mm256_mul_pd(tu, tu), zw = _mm256_mul_pd(tw, tw);
        const __m256d gu = exp4(_mm256_sub_pd(zero, zu));
        const __m256d gw = exp4(_mm256_sub_pd(zero, zw));
        const __m256d su = erf4_with_g(tu, zu, gu);
        const __m256d sw = erf4_with_g(tw, zw, gw);
        const __m256d rx = quantize4(_mm256_mul_pd(su, gw), scale, rounder);
        const __m256d ry = quantize4(_mm256_mul_pd(sw, gu), scale, rounder);
        sx = _mm256_add_pd(sx, rx);
        sy = _mm256_add_pd(sy, ry);
        _mm256_storeu_pd(acc_x + k, _mm256_sub_pd(_mm256_loadu_pd(acc_x + k), rx));
        _mm256_storeu_pd(acc_y + k, _mm256_sub_pd(_mm256_loadu_pd(acc_y + k), ry));
    }
    if (k < n) {
        const std::size_t rem = n - k;
        const __m256d mask = tail_mask_pd(rem);
        const __m256i maski = _mm256_castpd_si256(mask);
        const __m256d u = _mm256_sub_pd(_mm256_maskload_pd(xs + k, maski), x0v);
        const __m256d w = _mm256_sub_pd(_mm256_maskload_pd(ys + k, maski), y0v);
        const __m256d tu = _mm256_mul_pd(u, a), tw = _mm256_mul_pd(w, a);
        const __m256d zu = _mm256_mul_pd(tu, tu), zw = _mm256_mul_pd(tw, tw);
        const __m256d gu = exp4(_mm256_sub_pd(zero, zu));
        const __m256d gw = exp4(_mm256_sub_pd(zero, zw));
        const __m256d su = erf4_with_g(tu, zu, gu);
        const __m256d sw = erf4_with_g(tw, zw, gw);
        // dead lanes are zeroed so they contribute exactly nothing
        const __m256d rx =
            quantize4(_mm256_and_pd(_mm256_mul_pd(su, gw), mask), scale, rounder);
        const __m256d ry =
            quantize4(_mm256_and_pd(_mm256_mul_pd(sw, gu), mask), scale, rounder);
        sx = _mm256_add_pd(sx, rx);
        sy = _mm256_add_pd(sy, ry);
        _mm256_maskstore_pd(acc_x + k, maski,
                            _mm256_sub_pd(_mm256_maskload_pd(acc_x + k, maski), rx));
        _mm256_maskstore_pd(acc_y + k, maski,
                            _mm256_sub_pd(_mm256_maskload_pd(acc_y + k, maski), ry));
    }
    *sum_x += reduce4(sx);
    *sum_y += reduce4(sy);
}

MOT_AVX2 void pair_row_one_avx2(double x0, double y0, const double* xs, const double* ys,
                                double* acc_x, std::size_t n, double a_, double scale_,
                                double* sum_x) {
    const __m256d a = _mm256_set1_pd(a_);
    const __m256d scale = _mm256_set1_pd(scale_);
    const __m256d rounder = _mm256_set1_pd(kDepositRounder);
    const __m256d x0v = _mm256_set1_pd(x0), y0v = _mm256_set1_pd(y0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d sx = zero;

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d u = _mm256_sub_pd(_mm256_loadu_pd(xs + k), x0v);
        const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(ys + k), y0v);
        const __m256d tu = _mm256_mul_pd(u, a), tw = _mm256_mul_pd(w, a);
        const __m256d zu = _mm256_mul_pd(tu, tu), zw = _mm256_mul_pd(tw, tw);
        const __m256d gu = exp4(_mm256_sub_pd(zero, zu));
        const __m256d gw = exp4(_mm256_sub_pd(zero, zw));
        const __m256d rx =
            quantize4(_mm256_mul_pd(erf4_with_g(tu, zu, gu), gw), scale, rounder);
        sx = _mm256_add_pd(sx, rx);
        _mm256_storeu_pd(acc_x + k, _mm256_sub_pd(_mm256_loadu_pd(acc_x + k), rx));
    }
    if (k < n) {
        const std::size_t rem = n - k;
        const __m256d mask = tail_mask_pd(rem);
        const __m256i maski = _mm256_castpd_si256(mask);
        const __m256d u = _mm256_sub_pd(_mm256_maskload_pd(xs + k, maski), x0v);
        const __m256d w = _mm256_sub_pd(_mm256_maskload_pd(ys + k, maski), y0v);
        const __m256d tu = _mm256_mul_pd(u, a), tw = _mm256_mul_pd(w, a);
        const __m256d zu = _mm256_mul_pd(tu, tu), zw = _mm256_mul_pd(tw, tw);
        const __m256d gu = exp4(_mm256_sub_pd(zero, zu));
        const __m256d gw = exp4(_mm256_sub_pd(zero, zw));
        const __m256d rx = quantize4(
            _mm256_and_pd(_mm256_mul_pd(erf4_with_g(tu, zu, gu), gw), mask), scale,
            rounder);
        sx = _mm256_add_pd(sx, rx);
        _mm256_maskstore_pd(acc_x + k, maski,
                            _mm256_sub_pd(_mm256_maskload_pd(acc_x + k, maski), rx));
    }
    *sum_x += reduce4(sx);
}

}  // namespace

const Ops* avx2_ops_or_null() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Ops table{
        "avx2",
        vexp_avx2,
        vlog_avx2,
        verf_avx2,
        pair_row_avx2,
        pair_row_one_avx2,
    };
    return &table;
}

}  // namespace mot::simd

#else

namespace mot::simd {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace mot::simd

#endif
