#include <cmath>

#include "mot/simd/dispatch.hpp"

// Scalar reference tier: plain loops over libm. This is the semantic ground
// truth the vector tiers are tested against.

namespace mot::simd {
namespace {

void vexp_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void vlog_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void verf_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::erf(x[i]);
}

// Round onto the kDepositQuantum grid; exact for |v| < 32.
inline double quantize(double v) {
    return (v + kDepositRounder) - kDepositRounder;
}

void pair_row_scalar(double x0, double y0, const double* xs, const double* ys,
                     double* acc_x, double* acc_y, std::size_t n, double a,
                     double scale, double* sum_x, double* sum_y) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = xs[k] - x0;
        const double w = ys[k] - y0;
        const double tu = u * a, tw = w * a;
        const double gu = std::exp(-tu * tu);
        const double gw = std::exp(-tw * tw);
        const double rx = quantize(std::erf(tu) * gw * scale);
        const double ry = quantize(std::erf(tw) * gu * scale);
        sx += rx;
        sy += ry;
        acc_x[k] -= rx;
        acc_y[k] -= ry;
    }
    *sum_x += sx;
    *sum_y += sy;
}

void pair_row_one_scalar(double x0, double y0, const double* xs, const double* ys,
                         double* acc_x, std::size_t n, double a, double scale,
                         double* sum_x) {
    double sx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = xs[k] - x0;
        const double w = ys[k] - y0;
        const double tu = u * a, tw = w * a;
        const double rx = quantize(std::erf(tu) * std::exp(-tw * tw) * scale);
        sx += rx;
        acc_x[k] -= rx;
    }
    *sum_x += sx;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        "scalar",
        vexp_scalar,
        vlog_scalar,
        verf_scalar,
        pair_row_scalar,
        pair_row_one_scalar,
    };
    return table;
}

}  // namespace mot::simd
