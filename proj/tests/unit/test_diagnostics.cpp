#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mot/core/errors.hpp"
#include "mot/core/ic.hpp"
#include "mot/core/rng.hpp"
#include "mot/diagnostics/observables.hpp"
#include "mot/diagnostics/recorder.hpp"

using namespace mot;
namespace dg = mot::diagnostics;

namespace {

Grid2D box(int n, double half = 2.5) { return Grid2D{n, n, -half, half, -half, half}; }

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("uniform field: mass, lp, linf have closed forms") {
    Grid2D g = box(40);
    DensityField rho(g);
    const double c = 0.37;
    for (double& v : rho.v) v = c;
    const double area = 25.0;
    CHECK(dg::total_mass(rho) == doctest::Approx(c * area).epsilon(1e-13));
    CHECK(dg::lp_norm(rho, 1.0) == doctest::Approx(c * area).epsilon(1e-13));
    CHECK(dg::lp_norm(rho, 2.0) == doctest::Approx(c * std::sqrt(area)).epsilon(1e-13));
    CHECK(dg::lp_norm(rho, 3.0) == doctest::Approx(c * std::pow(area, 1.0 / 3)).epsilon(1e-13));
    CHECK(dg::linf_norm(rho) == c);
    CHECK_THROWS_AS(dg::lp_norm(rho, 0.5), ConfigError);
}

TEST_CASE("gaussian moments match 2 sigma^2 M and 6 sigma^4 M") {
    const double sigma = 0.4, mass = 1.7;
    DensityField rho = make_gaussian_ic(box(100), sigma, mass);
    CHECK(dg::moment_k(rho, 2) ==
          doctest::Approx(2.0 * sigma * sigma * mass).epsilon(2e-3));
    CHECK(dg::moment_k(rho, 4) ==
          doctest::Approx(6.0 * sigma * sigma * sigma * sigma * mass).epsilon(5e-3));
    CHECK_THROWS_AS(dg::moment_k(rho, 3), ConfigError);
}

TEST_CASE("gaussian entropy matches -M(1+ln 2 pi sigma^2) + M ln M") {
    const double sigma = 0.4, mass = 1.0;
    DensityField rho = make_gaussian_ic(box(100), sigma, mass);
    const double expect = -mass * (1.0 + std::log(2.0 * M_PI * sigma * sigma));
    CHECK(dg::entropy(rho) == doctest::Approx(expect).epsilon(2e-3));

    // scaling: rho -> c*rho adds M ln c to sum rho ln rho scaled by c
    DensityField r2 = rho;
    for (double& v : r2.v) v *= 3.0;
    CHECK(dg::entropy(r2) ==
          doctest::Approx(3.0 * (dg::entropy(rho) + mass * std::log(3.0))).epsilon(1e-10));
}

TEST_CASE("exp_moment: log-sum-exp equals the direct sum, lambda limits") {
    DensityField rho = make_gaussian_ic(box(80), 0.5, 2.0);
    for (double lambda : {1.0, 5.0}) {
        double direct = 0.0;
        for (int j = 0; j < rho.grid.ny; ++j)
            for (int i = 0; i < rho.grid.nx; ++i) {
                const double x = rho.grid.x(i), y = rho.grid.y(j);
                direct += std::exp(lambda * std::sqrt(1.0 + x * x + y * y)) * rho.at(i, j);
            }
        direct *= rho.grid.cell_area();
        CHECK(dg::exp_moment(rho, lambda) == doctest::Approx(direct).epsilon(1e-12));
    }
    // lambda -> 0 recovers the mass; monotone growth in lambda
    CHECK(dg::exp_moment(rho, 0.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(dg::exp_moment(rho, 1e-9) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(dg::exp_moment(rho, 2.0) > dg::exp_moment(rho, 1.0));
    CHECK_THROWS_AS(dg::exp_moment(rho, -1.0), ConfigError);
    // huge lambda must not overflow thanks to the shifted evaluation
    CHECK(std::isfinite(std::log(dg::exp_moment(rho, 50.0))));
}

TEST_CASE("covariance statistic vanishes on exact product densities") {
    Grid2D g = box(60);
    DensityField rho(g);
    CounterStream rng(99, 0);
    std::vector<double> a(g.nx), b(g.ny);
    for (int i = 0; i < g.nx; ++i) a[i] = 0.1 + rng.uniform(i, CounterStream::kSample);
    for (int j = 0; j < g.ny; ++j) b[j] = 0.1 + rng.uniform(j, CounterStream::kSample, 1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rho.at(i, j) = a[i] * b[j];
    CHECK(std::abs(dg::covariance_stat(rho)) < 1e-12);
}

TEST_CASE("covariance statistic on a two-atom density has a closed form") {
    Grid2D g = box(50);
    DensityField rho(g);
    // atoms near (0.5,0.5) and (1.5,1.5); use the actual cell centers
    const int i1 = 29, j1 = 29, i2 = 39, j2 = 39;
    rho.at(i1, j1) = 1.3;
    rho.at(i2, j2) = 1.3;  // equal masses
    const double x1 = std::abs(g.x(i1)), y1 = std::abs(g.y(j1));
    const double x2 = std::abs(g.x(i2)), y2 = std::abs(g.y(j2));
    const double expect =
        0.5 * (x1 * y1 + x2 * y2) - 0.25 * (x1 + x2) * (y1 + y2);
    CHECK(dg::covariance_stat(rho) == doctest::Approx(expect).epsilon(1e-12));
    DensityField empty(g);
    CHECK_THROWS_AS(dg::covariance_stat(empty), NumericalError);
}

TEST_CASE("ensemble moments and covariance agree with sampling theory") {
    const std::size_t n = 40000;
    const double sigma = 0.5;
    ParticleEnsemble e(n);
    CounterStream rng(1234, 0);
    for (std::size_t k = 0; k < n; ++k) {
        auto [gx, gy] = rng.normal_pair(k, CounterStream::kSample);
        e.x[k] = sigma * gx;
        e.y[k] = sigma * gy;
    }
    // E[x^2+y^2] = 2 sigma^2, sd of the estimator = 2 sigma^2 / sqrt(n)
    const double m2 = dg::moment_k(e, 2);
    CHECK(std::abs(m2 - 2 * sigma * sigma) < 4.0 * 2 * sigma * sigma / std::sqrt(double(n)));
    // independent coordinates: |x|,|y| uncorrelated
    CHECK(std::abs(dg::covariance_stat(e)) < 0.01);
    ParticleEnsemble empty;
    CHECK_THROWS_AS(dg::covariance_stat(empty), NumericalError);
}

TEST_CASE("grid sampling and ensemble moments are mutually consistent") {
    DensityField rho = make_gaussian_ic(box(100), 0.5, 1.0);
    ParticleEnsemble e = sample_particles_from_density(rho, 20000, 7);
    const double grid_m2 = dg::moment_k(rho, 2);
    const double ens_m2 = dg::moment_k(e, 2);
    // in-cell jitter adds (dx^2+dy^2)/12 ~ 4e-4; sampling sd ~ 3.5e-3
    CHECK(std::abs(ens_m2 - grid_m2) < 0.015);
}

TEST_CASE("symmetry defect: exact zero on mirror fields, exact error size") {
    DensityField rho = make_gaussian_ic(box(64), 0.5, 1.0);
    CHECK(dg::symmetry_defect(rho) == 0.0);
    const double old = rho.at(3, 7);
    rho.at(3, 7) = 2.0 * old;  // defect becomes exactly `old`
    CHECK(dg::symmetry_defect(rho) == old);

    DensityField off(Grid2D{16, 16, -1.0, 1.5, -1.0, 1.0});
    CHECK_THROWS_AS(dg::symmetry_defect(off), ConfigError);
}

TEST_CASE("l1/l2 distances: sparse differences have closed forms") {
    Grid2D g = box(32);
    DensityField a(g), b(g);
    for (std::size_t k = 0; k < a.v.size(); ++k) a.v[k] = 0.2;
    b = a;
    b.at(1, 2) += 0.5;
    b.at(9, 9) -= 0.25;
    b.at(30, 4) += 1.0;
    const double dA = g.cell_area();
    CHECK(dg::l1_distance(a, b) == doctest::Approx((0.5 + 0.25 + 1.0) * dA).epsilon(1e-13));
    CHECK(dg::l2_distance(a, b) ==
          doctest::Approx(std::sqrt((0.25 + 0.0625 + 1.0) * dA)).epsilon(1e-13));
    CHECK(dg::l1_distance(a, a) == 0.0);
    DensityField other(box(16));
    CHECK_THROWS_AS(dg::l1_distance(a, other), ConfigError);
}

TEST_CASE("recorder writes schema'd rows and rejects non-finite observables") {
    const std::string path = "/tmp/mot_test_recorder.csv";
    DensityField rho = make_gaussian_ic(box(50), 0.5, 1.0);
    {
        dg::Recorder rec(path, 1.0, true);
        rec.record(rho, 0.0);
        rec.record(rho, 0.5);
        rec.close();
    }
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# schema=1");
    std::getline(in, line);
    CHECK(line == "t,mass,l2,linf,m2,m4,entropy,exp_moment,covariance,symmetry");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ss, cell, ',')) {
            CHECK(std::isfinite(std::stod(cell)));
            ++cols;
        }
        CHECK(cols == 10);
    }
    CHECK(rows == 2);
    std::remove(path.c_str());

    DensityField bad = rho;
    bad.v[5] = std::nan("");
    dg::Recorder rec2("/tmp/mot_test_recorder2.csv", 1.0, false);
    CHECK_THROWS_AS(rec2.record(bad, 0.0), NumericalError);
    rec2.close();
    std::remove("/tmp/mot_test_recorder2.csv");
}

}  // TEST_SUITE
