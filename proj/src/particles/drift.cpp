#include "mot/particles/drift.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mot/core/errors.hpp"
#include "mot/simd/dispatch.hpp"

namespace mot::particles {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

DriftEvaluator::DriftEvaluator(double eps, DriftMode mode, double cutoff)
    : eps_(eps), mode_(mode), cutoff_(cutoff > 0.0 ? cutoff : 6.0 * eps) {
    if (!(eps > 0.0))
        throw ConfigError("drift evaluator: smoothing width must be positive");
}

void DriftEvaluator::evaluate(const ParticleEnsemble& z, std::vector<double>& dx,
                              std::vector<double>& dy, double mass) {
    const std::size_t n = z.n();
    dx.assign(n, 0.0);
    dy.assign(n, 0.0);
    if (n < 2) return;
    if (!(mass > 0.0)) throw ConfigError("drift evaluator: mass must be positive");

    const double scale = mass / (double(n) * eps_ * kSqrt2Pi);
    if (!(scale * double(n + 1) <= simd::kDepositCapacity))
        throw ConfigError(
            "drift evaluator: pair weight exceeds the deposit-grid capacity "
            "(smoothing width too small)");

    DriftMode m = mode_;
    if (m == DriftMode::kAuto)
        m = (n >= 1024) ? DriftMode::kCellList : DriftMode::kDirectN2;

    if (m == DriftMode::kDirectN2) {
        direct(z, dx, dy, scale);
    } else {
        sweep_component(z.x, z.y, dx, scale);
        sweep_component(z.y, z.x, dy, scale);
    }

#ifndef NDEBUG
    const double bound = mass / (eps_ * kSqrt2Pi) + 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        assert(std::abs(dx[i]) <= bound);
        assert(std::abs(dy[i]) <= bound);
    }
#endif
}

void DriftEvaluator::direct(const ParticleEnsemble& z, std::vector<double>& dx,
                            std::vector<double>& dy, double scale) {
    const auto& o = simd::ops();
    const double a = 1.0 / (eps_ * std::numbers::sqrt2);
    const std::size_t n = z.n();
    for (std::size_t i = 0; i + 1 < n; ++i)
        o.pair_row(z.x[i], z.y[i], z.x.data() + i + 1, z.y.data() + i + 1,
                   dx.data() + i + 1, dy.data() + i + 1, n - i - 1, a, scale, &dx[i],
                   &dy[i]);
}

void DriftEvaluator::sweep_component(const std::vector<double>& erf_coord,
                                     const std::vector<double>& gauss_coord,
                                     std::vector<double>& out, double scale) {
    const std::size_t n = erf_coord.size();
    const auto& o = simd::ops();
    const double a = 1.0 / (eps_ * std::numbers::sqrt2);

    ord_.resize(n);
    std::iota(ord_.begin(), ord_.end(), std::size_t{0});
    std::sort(ord_.begin(), ord_.end(), [&](std::size_t u, std::size_t v) {
        return gauss_coord[u] != gauss_coord[v] ? gauss_coord[u] < gauss_coord[v]
                                                : u < v;
    });

    sc_.resize(n);
    sg_.resize(n);
    acc_.assign(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        sc_[p] = erf_coord[ord_[p]];
        sg_[p] = gauss_coord[ord_[p]];
    }

    std::size_t hi = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (hi < p + 1) hi = p + 1;
        while (hi < n && sg_[hi] - sg_[p] <= cutoff_) ++hi;
        const std::size_t cnt = hi - p - 1;
        if (cnt > 0)
            o.pair_row_one(sc_[p], sg_[p], sc_.data() + p + 1, sg_.data() + p + 1,
                           acc_.data() + p + 1, cnt, a, scale, &acc_[p]);
    }
    for (std::size_t p = 0; p < n; ++p) out[ord_[p]] = acc_[p];
}

}  // namespace mot::particles
