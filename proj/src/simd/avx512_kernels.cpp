#include "mot/simd/dispatch.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

#include "poly_coeffs.hpp"

// AVX-512 tier (F+DQ). Same algorithms as the AVX2 tier at width 8; tails use
// real lane masks, so every element — tail included — takes the vector path.

#define MOT_AVX512 __attribute__((target("avx512f,avx512dq")))

namespace mot::simd {
namespace {

MOT_AVX512 inline __m512d exp8(__m512d x) {
    const __m512d hi = _mm512_set1_pd(poly::kExpClamp);
    x = _mm512_min_pd(x, hi);
    x = _mm512_max_pd(x, _mm512_sub_pd(_mm512_setzero_pd(), hi));
    const __m512d n = _mm512_roundscale_pd(_mm512_mul_pd(x, _mm512_set1_pd(poly::kLog2E)),
                                           _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m512d r = _mm512_fnmadd_pd(n, _mm512_set1_pd(poly::kExpC1), x);
    r = _mm512_fnmadd_pd(n, _mm512_set1_pd(poly::kExpC2), r);
    __m512d p = _mm512_set1_pd(poly::kExpC[13]);
    for (int k = 12; k >= 0; --k) p = _mm512_fmadd_pd(p, r, _mm512_set1_pd(poly::kExpC[k]));
    return _mm512_scalef_pd(p, n);
}

MOT_AVX512 inline __m512d erf8_with_g(__m512d t, __m512d z, __m512d g) {
    const __m512d one = _mm512_set1_pd(1.0);
    const __m512d signmask = _mm512_set1_pd(-0.0);

    __m512d pa = _mm512_set1_pd(poly::kErfA[10]);
    for (int k = 9; k >= 0; --k) pa = _mm512_fmadd_pd(pa, z, _mm512_set1_pd(poly::kErfA[k]));
    const __m512d small = _mm512_mul_pd(t, pa);

    const __m512d at = _mm512_abs_pd(t);
    __m512d u = _mm512_div_pd(one, at);
    u = _mm512_min_pd(u, one);
    u = _mm512_max_pd(u, _mm512_set1_pd(0.16));
    const __m512d s =
        _mm512_fmadd_pd(u, _mm512_set1_pd(poly::kErfBScale), _mm512_set1_pd(poly::kErfBShift));
    __m512d pb = _mm512_set1_pd(poly::kErfB[22]);
    for (int k = 21; k >= 0; --k) pb = _mm512_fmadd_pd(pb, s, _mm512_set1_pd(poly::kErfB[k]));
    __m512d large = _mm512_fnmadd_pd(g, pb, one);
    large = _mm512_or_pd(large, _mm512_and_pd(t, signmask));

    const __mmask8 pick_small = _mm512_cmp_pd_mask(at, one, _CMP_LT_OQ);
    return _mm512_mask_blend_pd(pick_small, large, small);
}

MOT_AVX512 void vexp_avx512(const double* x, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) _mm512_storeu_pd(out + k, exp8(_mm512_loadu_pd(x + k)));
    if (k < n) {
        const __mmask8 m = static_cast<__mmask8>((1u << (n - k)) - 1u);
        // dead lanes read as 0 -> exp well-defined; masked store drops them
        _mm512_mask_storeu_pd(out + k, m, exp8(_mm512_maskz_loadu_pd(m, x + k)));
    }
}

MOT_AVX512 inline __m512d log8(__m512d x) {
    const __m512i ix = _mm512_castpd_si512(x);
    const __m512i expo = _mm512_sub_epi64(_mm512_srli_epi64(ix, 52), _mm512_set1_epi64(1022));
    const __m512i mant = _mm512_or_si512(
        _mm512_and_si512(ix, _mm512_set1_epi64(0x000FFFFFFFFFFFFFll)),
        _mm512_set1_epi64(0x3FE0000000000000ll));
    __m512d m = _mm512_castsi512_pd(mant);  // [0.5, 1)

    const __m512d sqrt_half = _mm512_set1_pd(0.70710678118654752440);
    const __mmask8 lt = _mm512_cmp_pd_mask(m, sqrt_half, _CMP_LT_OQ);
    m = _mm512_mask_add_pd(m, lt, m, m);

    __m512d ed = _mm512_cvtepi64_pd(expo);
    ed = _mm512_mask_sub_pd(ed, lt, ed, _mm512_set1_pd(1.0));

    const __m512d t = _mm512_sub_pd(m, _mm512_set1_pd(1.0));
    __m512d p = _mm512_set1_pd(poly::kLogL[16]);
    for (int k = 15; k >= 0; --k) p = _mm512_fmadd_pd(p, t, _mm512_set1_pd(poly::kLogL[k]));
    const __m512d r = _mm512_mul_pd(t, p);
    return _mm512_fmadd_pd(ed, _mm512_set1_pd(poly::kLn2Hi),
                           _mm512_fmadd_pd(ed, _mm512_set1_pd(poly::kLn2Lo), r));
}

MOT_AVX512 void vlog_avx512(const double* x, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) _mm512_storeu_pd(out + k, log8(_mm512_loadu_pd(x + k)));
    if (k < n) {
        const __mmask8 m = static_cast<__mmask8>((1u << (n - k)) - 1u);
        // dead lanes must stay in-domain for log: substitute 1.0
        const __m512d v =
            _mm512_mask_loadu_pd(_mm512_set1_pd(1.0), m, x + k);
        _mm512_mask_storeu_pd(out + k, m, log8(v));
    }
}

MOT_AVX512 inline __m512d erf8(__m512d t) {
    const __m512d z = _mm512_mul_pd(t, t);
    const __m512d at = _mm512_abs_pd(t);
    __m512d g = _mm512_setzero_pd();
    if (_mm512_cmp_pd_mask(at, _mm512_set1_pd(1.0), _CMP_GE_OQ) != 0)
        g = exp8(_mm512_sub_pd(_mm512_setzero_pd(), z));
    return erf8_with_g(t, z, g);
}

MOT_AVX512 void verf_avx512(const double* x, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) _mm512_storeu_pd(out + k, erf8(_mm512_loadu_pd(x + k)));
    if (k < n) {
        const __mmask8 m = static_cast<__mmask8>((1u << (n - k)) - 1u);
        _mm512_mask_storeu_pd(out + k, m, erf8(_mm512_maskz_loadu_pd(m, x + k)));
    }
}

// Round each lane onto the shared deposit grid; lanes already exactly 0 stay 0.
MOT_AVX512 inline __m512d quantize8(__m512d v, __m512d scale, __m512d rounder) {
    return _mm512_sub_pd(_mm512_add_pd(_mm512_mul_pd(v, scale), rounder), rounder);
}

MOT_AVX512 void pair_row_avx512(double x0, double y0, const double* xs, const double* ys,
                                double* acc_x, double* acc_y, std::size_t n, double a_,
                                double scale_, double* sum_x, double* sum_y) {
    const __m512d a = _mm512_set1_pd(a_);
    const __m512d scale = _mm512_set1_pd(scale_);
    const __m512d rounder = _mm512_set1_pd(kDepositRounder);
    const __m512d x0v = _mm512_set1_pd(x0), y0v = _mm512_set1_pd(y0);
    const __m512d zero = _mm512_setzero_pd();
    __m512d sx = zero, sy = zero;

    for (std::size_t k = 0; k < n; k += 8) {
        const __mmask8 m =
            (n - k >= 8) ? static_cast<__mmask8>(0xFF)
                         : static_cast<__mmask8>((1u << (n - k)) - 1u);
        const __m512d u = _mm512_sub_pd(_mm512_maskz_loadu_pd(m, xs + k), x0v);
        const __m512d w = _mm512_sub_pd(_mm512_maskz_loadu_pd(m, ys + k), y0v);
        const __m512d tu = _mm512_mul_pd(u, a), tw = _mm512_mul_pd(w, a);
        const __m512d zu = _mm512_mul_pd(tu, tu), zw = _mm512_mul_pd(tw, tw);
        const __m512d gu = exp8(_mm512_sub_pd(zero, zu));
        const __m512d gw = exp8(_mm512_sub_pd(zero, zw));
        const __m512d su = erf8_with_g(tu, zu, gu);
        const __m512d sw = erf8_with_g(tw, zw, gw);
        // dead lanes zeroed before quantizing so masked steps contribute exactly nothing
        const __m512d rx = quantize8(_mm512_maskz_mul_pd(m, su, gw), scale, rounder);
        const __m512d ry = quantize8(_mm512_maskz_mul_pd(m, sw, gu), scale, rounder);
        sx = _mm512_add_pd(sx, rx);
        sy = _mm512_add_pd(sy, ry);
        _mm512_mask_storeu_pd(acc_x + k, m,
                              _mm512_sub_pd(_mm512_maskz_loadu_pd(m, acc_x + k), rx));
        _mm512_mask_storeu_pd(acc_y + k, m,
                              _mm512_sub_pd(_mm512_maskz_loadu_pd(m, acc_y + k), ry));
    }
    *sum_x += _mm512_reduce_add_pd(sx);
    *sum_y += _mm512_reduce_add_pd(sy);
}

MOT_AVX512 void pair_row_one_avx512(double x0, double y0, const double* xs, const double* ys,
                                    double* acc_x, std::size_t n, double a_, double scale_,
                                    double* sum_x) {
    const __m512d a = _mm512_set1_pd(a_);
    const __m512d scale = _mm512_set1_pd(scale_);
    const __m512d rounder = _mm512_set1_pd(kDepositRounder);
    const __m512d x0v = _mm512_set1_pd(x0), y0v = _mm512_set1_pd(y0);
    const __m512d zero = _mm512_setzero_pd();
    __m512d sx = zero;

    for (std::size_t k = 0; k < n; k += 8) {
        const __mmask8 m =
            (n - k >= 8) ? static_cast<__mmask8>(0xFF)
                         : static_cast<__mmask8>((1u << (n - k)) - 1u);
        const __m512d u = _mm512_sub_pd(_mm512_maskz_loadu_pd(m, xs + k), x0v);
        const __m512d w = _mm512_sub_pd(_mm512_maskz_loadu_pd(m, ys + k), y0v);
        const __m512d tu = _mm512_mul_pd(u, a), tw = _mm512_mul_pd(w, a);
        const __m512d zu = _mm512_mul_pd(tu, tu), zw = _mm512_mul_pd(tw, tw);
        const __m512d gu = exp8(_mm512_sub_pd(zero, zu));
        const __m512d gw = exp8(_mm512_sub_pd(zero, zw));
        const __m512d rx = quantize8(
            _mm512_maskz_mul_pd(m, erf8_with_g(tu, zu, gu), gw), scale, rounder);
        sx = _mm512_add_pd(sx, rx);
        _mm512_mask_storeu_pd(acc_x + k, m,
                              _mm512_sub_pd(_mm512_maskz_loadu_pd(m, acc_x + k), rx));
    }
    *sum_x += _mm512_reduce_add_pd(sx);
}

}  // namespace

const Ops* avx512_ops_or_null() {
    if (!__builtin_cpu_supports("avx512f") || !__builtin_cpu_supports("avx512dq"))
        return nullptr;
    static const Ops table{
        "avx512",
        vexp_avx512,
        vlog_avx512,
        verf_avx512,
        pair_row_avx512,
        pair_row_one_avx512,
    };
    return &table;
}

}  // namespace mot::simd

#else

namespace mot::simd {
const Ops* avx512_ops_or_null() { return nullptr; }
}  // namespace mot::simd

#endif
