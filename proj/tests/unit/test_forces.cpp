#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mot/core/field.hpp"
#include "mot/core/ic.hpp"
#include "mot/forces/grid_force.hpp"
#include "mot/forces/smooth_kernel.hpp"

using namespace mot;
using namespace mot::forces;

namespace {

DensityField random_field(const Grid2D& g, std::uint64_t seed) {
    DensityField f(g);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : f.v) v = u(gen);
    return f;
}

DensityField gaussian_field(const Grid2D& g, double sigma, double mass = 1.0) {
    IcSpec ic;
    ic.sigma = sigma;
    ic.mass = mass;
    return make_ic(g, ic);
}

// Reference: brute-force one-coordinate convolutions straight from the
// definition, libm transcendentals, O(n^2) per line.
ForceField direct_singular(const DensityField& rho) {
    const Grid2D& g = rho.grid;
    ForceField f{DensityField(g), DensityField(g)};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double sx = 0.0, sy = 0.0;
            for (int k = 0; k < g.nx; ++k)
                sx += double((i > k) - (i < k)) * rho.at(k, j);
            for (int k = 0; k < g.ny; ++k)
                sy += double((j > k) - (j < k)) * rho.at(i, k);
            f.fx.at(i, j) = -g.dx() * sx;
            f.fy.at(i, j) = -g.dy() * sy;
        }
    return f;
}

double rel_l2(const std::vector<double>& err, const std::vector<double>& ref) {
    double e = 0.0, r = 0.0;
    for (std::size_t k = 0; k < err.size(); ++k) {
        e += err[k] * err[k];
        r += ref[k] * ref[k];
    }
    return std::sqrt(e / r);
}

// Relative L2 mismatch of centered divergence of f against target, interior
// cells only (the one-sided boundary stencil is not part of the identity).
double divergence_mismatch(const ForceField& f, const DensityField& target) {
    const Grid2D& g = target.grid;
    std::vector<double> err, ref;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const double div =
                (f.fx.at(i + 1, j) - f.fx.at(i - 1, j)) / (2.0 * g.dx()) +
                (f.fy.at(i, j + 1) - f.fy.at(i, j - 1)) / (2.0 * g.dy());
            err.push_back(div - target.at(i, j));
            ref.push_back(target.at(i, j));
        }
    return rel_l2(err, ref);
}

}  // namespace

TEST_SUITE("forces") {

TEST_CASE("smooth kernel internals are consistent") {
    const SmoothKernel k{0.17};
    // antideriv' == sgn
    for (double u : {-0.5, -0.03, 0.0, 0.01, 0.2, 1.0}) {
        const double h = 1e-6;
        const double d = (k.antideriv(u + h) - k.antideriv(u - h)) / (2.0 * h);
        CHECK(d == doctest::Approx(k.sgn(u)).epsilon(1e-7));
    }
    // bump has unit integral
    double s = 0.0;
    const double h = 0.17 / 200.0;
    for (int i = -4000; i <= 4000; ++i) s += k.bump(double(i) * h) * h;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    // pair force is antisymmetric under swapping the two particles
    const auto [fx, fy] = k.pair_force(0.21, -0.34);
    const auto [gx, gy] = k.pair_force(-0.21, 0.34);
    CHECK(fx == -gx);
    CHECK(fy == -gy);
    // peak of the bump saturates the force bound for unit mass
    CHECK(k.bump(0.0) == doctest::Approx(k.force_bound(1.0)));
}

TEST_CASE("step-kernel force equals the brute-force sum") {
    Grid2D g{17, 13, -1.0, 1.0, -0.8, 0.8};
    DensityField rho = random_field(g, 21);
    ForceField fast = singular_force(rho);
    ForceField ref = direct_singular(rho);
    for (std::size_t k = 0; k < rho.v.size(); ++k) {
        CHECK(fast.fx.v[k] == doctest::Approx(ref.fx.v[k]).epsilon(1e-12));
        CHECK(fast.fy.v[k] == doctest::Approx(ref.fy.v[k]).epsilon(1e-12));
    }
}

TEST_CASE("smoothed force equals the brute-force sum") {
    Grid2D g{24, 18, -1.2, 1.2, -0.9, 0.9};
    DensityField rho = random_field(g, 22);
    const double eps = 0.15;
    ForceField fast = regularized_force(rho, eps);

    // Independent dense reference: per-source-normalized Gaussian smoothing
    // along one axis, then a dense erf-kernel sum along the other. The
    // truncation radius matches the library's (7.5 eps), everything else is
    // plain libm double loops.
    const double a = SmoothKernel{eps}.inv_sqrt2_eps();
    auto smooth_axis = [&](const DensityField& in, bool along_x) {
        const int n = along_x ? g.nx : g.ny;
        const double delta = along_x ? g.dx() : g.dy();
        const int K = std::max(1, int(std::ceil(7.5 * eps / delta)));
        auto wgt = [&](int d) {
            const double t = double(d) * delta / eps;
            return std::abs(d) <= K ? std::exp(-0.5 * t * t) : 0.0;
        };
        DensityField out(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int src = along_x ? i : j;
                double W = 0.0;
                for (int d = -K; d <= K; ++d)
                    if (src + d >= 0 && src + d < n) W += wgt(d);
                for (int d = -K; d <= K; ++d) {
                    const int tgt = src + d;
                    if (tgt < 0 || tgt >= n) continue;
                    const double share = in.at(i, j) * wgt(d) / W;
                    if (along_x)
                        out.at(tgt, j) += share;
                    else
                        out.at(i, tgt) += share;
                }
            }
        return out;
    };

    DensityField ry = smooth_axis(rho, false);
    DensityField rx = smooth_axis(rho, true);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double sx = 0.0, sy = 0.0;
            for (int k = 0; k < g.nx; ++k)
                sx += std::erf((g.x(i) - g.x(k)) * a) * ry.at(k, j);
            for (int k = 0; k < g.ny; ++k)
                sy += std::erf((g.y(j) - g.y(k)) * a) * rx.at(i, k);
            CHECK(fast.fx.at(i, j) == doctest::Approx(-g.dx() * sx).epsilon(1e-11));
            CHECK(fast.fy.at(i, j) == doctest::Approx(-g.dy() * sy).epsilon(1e-11));
        }
}

TEST_CASE("smoothed force respects the sup bound") {
    Grid2D g{100, 100, -2.5, 2.5, -2.5, 2.5};
    const double mass = 1.7;
    DensityField rho = gaussian_field(g, 0.5, mass);
    const double eps = 0.1;
    ForceField f = regularized_force(rho, eps);
    const double bound = SmoothKernel{eps}.force_bound(mass) * (1.0 + 1e-9);
    for (std::size_t k = 0; k < rho.v.size(); ++k) {
        CHECK(std::abs(f.fx.v[k]) <= bound);
        CHECK(std::abs(f.fy.v[k]) <= bound);
    }
}

TEST_CASE("divergence identity, step kernel: div F = -4 rho") {
    Grid2D g{100, 100, -2.5, 2.5, -2.5, 2.5};
    DensityField rho = gaussian_field(g, 0.5);
    DensityField target(g);
    for (std::size_t k = 0; k < rho.v.size(); ++k) target.v[k] = -4.0 * rho.v[k];
    const double err_c = divergence_mismatch(singular_force(rho), target);
    CHECK(err_c < 0.05);

    Grid2D g2{200, 200, -2.5, 2.5, -2.5, 2.5};
    DensityField rho2 = gaussian_field(g2, 0.5);
    DensityField target2(g2);
    for (std::size_t k = 0; k < rho2.v.size(); ++k) target2.v[k] = -4.0 * rho2.v[k];
    const double err_f = divergence_mismatch(singular_force(rho2), target2);
    CHECK(err_c / err_f >= 1.5);
}

TEST_CASE("divergence identity, smoothed kernel: div F = -4 smoothed rho") {
    const double eps = 0.2;
    Grid2D g{100, 100, -2.5, 2.5, -2.5, 2.5};
    DensityField rho = gaussian_field(g, 0.5);
    DensityField sm = mollify(rho, eps);
    DensityField target(g);
    for (std::size_t k = 0; k < sm.v.size(); ++k) target.v[k] = -4.0 * sm.v[k];
    const double err_c = divergence_mismatch(regularized_force(rho, eps), target);
    CHECK(err_c < 0.05);

    Grid2D g2{200, 200, -2.5, 2.5, -2.5, 2.5};
    DensityField rho2 = gaussian_field(g2, 0.5);
    DensityField sm2 = mollify(rho2, eps);
    DensityField target2(g2);
    for (std::size_t k = 0; k < sm2.v.size(); ++k) target2.v[k] = -4.0 * sm2.v[k];
    const double err_f = divergence_mismatch(regularized_force(rho2, eps), target2);
    CHECK(err_c / err_f >= 1.5);
}

TEST_CASE("mollifier conserves mass and is a near-semigroup") {
    Grid2D g{200, 200, -2.5, 2.5, -2.5, 2.5};
    DensityField rho = random_field(g, 23);
    double m0 = 0.0;
    for (double v : rho.v) m0 += v;

    DensityField sm = mollify(rho, 0.12);
    double m1 = 0.0;
    for (double v : sm.v) m1 += v;
    CHECK(m1 == doctest::Approx(m0).epsilon(1e-12));

    // two passes at width a compose to one pass at width a*sqrt(2), away
    // from truncation and boundary effects
    DensityField gme = gaussian_field(g, 0.3);
    DensityField twice = mollify(mollify(gme, 0.1), 0.1);
    DensityField once = mollify(gme, 0.1 * std::numbers::sqrt2);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < twice.v.size(); ++k) {
        num += std::abs(twice.v[k] - once.v[k]);
        den += std::abs(once.v[k]);
    }
    CHECK(num / den < 1e-9);
}

TEST_CASE("potential differences are consistent with the force") {
    const double eps = 0.15;
    Grid2D g{100, 100, -2.5, 2.5, -2.5, 2.5};
    DensityField rho = gaussian_field(g, 0.5);

    // step kernel: the difference quotient equals the interface-split sum
    Potentials p = potentials(rho, ForceMode::kSingular, 0.0);
    for (int j = 20; j < 80; j += 7)
        for (int i = 0; i + 1 < g.nx; ++i) {
            double s = 0.0;
            for (int k = 0; k <= i; ++k) s += rho.at(k, j);
            for (int k = i + 1; k < g.nx; ++k) s -= rho.at(k, j);
            const double dq = (p.U.at(i + 1, j) - p.U.at(i, j)) / g.dx();
            CHECK(dq == doctest::Approx(g.dx() * s).epsilon(1e-10));
        }

    // smoothed kernel: difference quotient matches -avg(Fx) to second order
    Potentials ps = potentials(rho, ForceMode::kRegularized, eps);
    ForceField f = regularized_force(rho, eps);
    std::vector<double> err, ref;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double dq = (ps.U.at(i + 1, j) - ps.U.at(i, j)) / g.dx();
            const double mid = -0.5 * (f.fx.at(i, j) + f.fx.at(i + 1, j));
            err.push_back(dq - mid);
            ref.push_back(mid);
        }
    CHECK(rel_l2(err, ref) < 0.01);
}

TEST_CASE("symmetric inputs give bitwise mirror forces and potentials") {
    Grid2D g{100, 100, -2.5, 2.5, -2.5, 2.5};
    DensityField rho = gaussian_field(g, 0.5);

    for (ForceMode mode : {ForceMode::kSingular, ForceMode::kRegularized}) {
        ForceField f = force_field(rho, mode, 0.1);
        Potentials p = potentials(rho, mode, 0.1);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int mi = g.mirror_x(i), mj = g.mirror_y(j);
                CHECK(f.fx.at(mi, j) == -f.fx.at(i, j));
                CHECK(f.fy.at(i, mj) == -f.fy.at(i, j));
                CHECK(f.fx.at(i, mj) == f.fx.at(i, j));
                CHECK(f.fy.at(mi, j) == f.fy.at(i, j));
                CHECK(p.U.at(mi, j) == p.U.at(i, j));
                CHECK(p.U.at(i, mj) == p.U.at(i, j));
                CHECK(p.V.at(mi, j) == p.V.at(i, j));
                CHECK(p.V.at(i, mj) == p.V.at(i, j));
            }
        DensityField sm = mollify(rho, 0.1);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                CHECK(sm.at(i, j) == sm.at(g.mirror_x(i), g.mirror_y(j)));
    }
}

}  // TEST_SUITE
