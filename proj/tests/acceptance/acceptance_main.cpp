// Acceptance gates for the attractive-cloud toolkit. Each criterion prints
// exactly one PASS/FAIL line with its measured numbers; the process exits
// nonzero if any requested criterion fails. Run with no arguments for the
// full set, or pass criterion names (A1 .. A12) to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mot/app/experiments.hpp"
#include "mot/core/config.hpp"
#include "mot/core/ensemble.hpp"
#include "mot/core/errors.hpp"
#include "mot/core/ic.hpp"
#include "mot/diagnostics/observables.hpp"
#include "mot/forces/grid_force.hpp"
#include "mot/particles/coupled.hpp"
#include "mot/particles/deposit.hpp"
#include "mot/particles/drift.hpp"
#include "mot/particles/stepper.hpp"
#include "mot/transport/wasserstein.hpp"

using namespace mot;

namespace {

// ---- pinned tolerances --------------------------------------------------
constexpr double kHeatErrTol = 0.02;        // A1: relative L2 vs analytic
constexpr double kHeatRatioMin = 1.8;       // A1: coarse/fine error ratio
constexpr double kHeatBudgetSec = 30.0;     // A1
constexpr double kConservationTol = 1e-10;  // A2: mass drift and per-step clip
constexpr double kDivIdentityTol = 0.05;    // A3: relative L2 at dx = 0.05
constexpr double kNormsBudgetSec = 600.0;    // A4
constexpr double kMomentSlopeTol = 0.01;    // A5: relative error of 4*D*M0
constexpr double kSymmetryTol = 1e-10;      // A7
constexpr double kTransportTol = 1e-9;      // A8
constexpr double kDriftAgreeTol = 1e-8;     // A9: componentwise, both axes
constexpr double kNRateBudgetSec = 1200.0;   // A10
constexpr double kCouplingBudgetSec = 900.0;  // A12

double now_s() {
    using clk = std::chrono::steady_clock;
    static const clk::time_point t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

struct Timer {
    double start = now_s();
    double elapsed() const { return now_s() - start; }
};

// ---- shared runs (memoized so the all-in-one invocation computes each
// trajectory once; standalone invocations compute only what they need) ----

const SimConfig& norms_config() {
    static const SimConfig cfg = [] {
        SimConfig c;  // 100x100 on [-2.5, 2.5]^2, dx = 0.05, unit mass
        c.t_end = 5.0;
        c.force_mode = ForceMode::kSingular;
        c.limiter = Limiter::kMinmod;
        return c;
    }();
    return cfg;
}

const app::ObservableSeries& norms_series(double D) {
    static std::map<double, app::ObservableSeries> cache;
    auto it = cache.find(D);
    if (it == cache.end()) {
        SimConfig c = norms_config();
        c.D = D;
        it = cache.emplace(D, app::run_fv_series(c, 1.0)).first;
    }
    return it->second;
}

// ---- criteria -----------------------------------------------------------

bool a1_heat_oracle() {
    Timer tm;
    const SimConfig cfg = app::base_config("heat-check", {});  // D=0.15, t=1, 100^2
    const app::HeatCheck hc = app::heat_check_core(cfg);
    const double secs = tm.elapsed();
    const bool ok = hc.err_coarse <= kHeatErrTol && hc.ratio >= kHeatRatioMin &&
                    secs < kHeatBudgetSec;
    std::printf("A1 %s heat oracle: rel L2 err %.3g (100^2) %.3g (200^2), ratio %.2f "
                "(gates: err <= %.2g, ratio >= %.2g), %.1f s (< %.0f s)\n",
                ok ? "PASS" : "FAIL", hc.err_coarse, hc.err_fine, hc.ratio, kHeatErrTol,
                kHeatRatioMin, secs, kHeatBudgetSec);
    return ok;
}

bool a2_conservation() {
    Timer tm;
    // representative runs through every force mode of the recording path,
    // which itself aborts any run beyond these budgets
    double worst_drift = 0.0, worst_clip = 0.0;
    for (ForceMode mode :
         {ForceMode::kSingular, ForceMode::kRegularized, ForceMode::kNone}) {
        SimConfig c = norms_config();
        c.force_mode = mode;
        c.t_end = 1.0;
        const app::ObservableSeries s = app::run_fv_series(c, 1.0);
        worst_drift = std::max(worst_drift, s.mass_drift_max);
        worst_clip = std::max(worst_clip, s.clip_frac_max);
    }
    const bool ok = worst_drift <= kConservationTol && worst_clip <= kConservationTol;
    std::printf("A2 %s conservation & positivity: max mass drift %.3g, max clipped/step "
                "%.3g (gates <= %.0e), %.1f s\n",
                ok ? "PASS" : "FAIL", worst_drift, worst_clip, kConservationTol,
                tm.elapsed());
    return ok;
}

double div_identity_err(int n, ForceMode mode, double eps) {
    SimConfig c;
    c.nx = c.ny = n;
    const Grid2D g = c.grid();
    const DensityField rho = make_gaussian_ic(g, 0.5, 1.0);
    const ForceField F = forces::force_field(rho, mode, eps);
    const DensityField target =
        mode == ForceMode::kSingular ? rho : forces::mollify(rho, eps);
    double num = 0.0, den = 0.0;
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const double div = (F.fx.at(i + 1, j) - F.fx.at(i - 1, j)) / (2.0 * g.dx()) +
                               (F.fy.at(i, j + 1) - F.fy.at(i, j - 1)) / (2.0 * g.dy());
            const double want = -4.0 * target.at(i, j);
            num += (div - want) * (div - want);
            den += want * want;
        }
    }
    return std::sqrt(num / den);
}

bool a3_divergence_identities() {
    Timer tm;
    const double s100 = div_identity_err(100, ForceMode::kSingular, 0.1);
    const double s200 = div_identity_err(200, ForceMode::kSingular, 0.1);
    const double r100 = div_identity_err(100, ForceMode::kRegularized, 0.1);
    const double r200 = div_identity_err(200, ForceMode::kRegularized, 0.1);
    const bool ok = s100 <= kDivIdentityTol && r100 <= kDivIdentityTol && s200 < s100 &&
                    r200 < r100;
    std::printf("A3 %s divergence identities: singular %.3g -> %.3g, smoothed %.3g -> "
                "%.3g under dx 0.05 -> 0.025 (gate <= %.2g and improving), %.1f s\n",
                ok ? "PASS" : "FAIL", s100, s200, r100, r200, kDivIdentityTol,
                tm.elapsed());
    return ok;
}

bool a4_norm_histories() {
    Timer tm;
    bool ok = true;
    std::string note;
    double peak15 = 0.0;
    for (double D : {0.15, 0.25, 0.35}) {
        const app::ObservableSeries& s = norms_series(D);
        for (double v : s.l2)
            if (!std::isfinite(v)) {
                ok = false;
                note += " blow-up at D=" + std::to_string(D) + ";";
            }
        if (D == 0.35) {
            for (std::size_t k = 0; k + 1 < s.t.size(); ++k)
                if (s.t[k] >= 0.5 && s.l2[k + 1] > s.l2[k] * (1.0 + 1e-10)) {
                    ok = false;
                    note += " L2 rises at t=" + std::to_string(s.t[k + 1]) + " (D=0.35);";
                }
        }
        if (D == 0.15) {
            bool up = false, down = false;
            for (std::size_t k = 0; k + 1 < s.l2.size(); ++k) {
                if (s.l2[k + 1] > s.l2[k] + 1e-8) up = true;
                if (s.l2[k + 1] < s.l2[k] - 1e-8) down = true;
            }
            for (double v : s.l2) peak15 = std::max(peak15, v / s.l2.front());
            if (!(up && down)) {
                ok = false;
                note += " D=0.15 L2 series is monotone;";
            }
            if (peak15 > 10.0) {
                ok = false;
                note += " D=0.15 L2 grew past 10x its start;";
            }
        }
    }
    const double secs = tm.elapsed();
    if (secs >= kNormsBudgetSec) ok = false;
    std::printf("A4 %s norm histories to t=5: D=0.35 non-increasing after t=0.5, D=0.15 "
                "non-monotone with peak %.2fx start%s, %.1f s (< %.0f s)\n",
                ok ? "PASS" : "FAIL", peak15, note.c_str(), secs, kNormsBudgetSec);
    return ok;
}

bool a5_moment_law() {
    Timer tm;
    // pure diffusion: the second moment grows at exactly 4*D*M0
    SimConfig free = norms_config();
    free.force_mode = ForceMode::kNone;
    free.t_end = 1.0;
    const app::ObservableSeries off = app::run_fv_series(free, 1.0);
    const double want = 4.0 * free.D * diagnostics::total_mass(
                                           make_gaussian_ic(free.grid(), free.ic.sigma,
                                                            free.ic.mass));
    const double slope = (off.m2.back() - off.m2.front()) / off.t.back();
    const double rel = std::abs(slope - want) / want;

    // with attraction on, spreading can only slow down
    const app::ObservableSeries& on = norms_series(0.15);
    bool bounded = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < on.t.size(); ++k) {
        const double cap = on.m2.front() + want * on.t[k];
        worst = std::max(worst, on.m2[k] - cap);
        if (on.m2[k] > cap * (1.0 + 1e-9)) bounded = false;
    }
    const bool ok = rel <= kMomentSlopeTol && bounded;
    std::printf("A5 %s second-moment law: force-off slope %.6g vs 4*D*M0 = %.6g "
                "(rel err %.3g, gate %.2g); force-on excess above the cap %.3g, %.1f s\n",
                ok ? "PASS" : "FAIL", slope, want, rel, kMomentSlopeTol, worst,
                tm.elapsed());
    return ok;
}

bool a6_exponential_moment() {
    Timer tm;
    const app::ObservableSeries& s = norms_series(0.35);
    const double D = 0.35, lambda = 1.0;
    const double rate = D * (lambda * lambda + 2.0 * lambda);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        const double cap = s.expm.front() * std::exp(rate * s.t[k]);
        worst = std::max(worst, s.expm[k] / cap);
        if (s.expm[k] > cap * (1.0 + 1e-9)) ok = false;
    }
    std::printf("A6 %s exponential moment: max E(t)/(E0 e^{3Dt}) = %.4f (gate <= 1), "
                "%.1f s\n",
                ok ? "PASS" : "FAIL", worst, tm.elapsed());
    return ok;
}

bool a7_symmetry() {
    Timer tm;
    double worst = 0.0;
    for (double v : norms_series(0.15).sym) worst = std::max(worst, v);
    SimConfig reg = norms_config();
    reg.force_mode = ForceMode::kRegularized;
    reg.t_end = 1.0;
    for (double v : app::run_fv_series(reg, 1.0).sym) worst = std::max(worst, v);
    const bool ok = worst <= kSymmetryTol;
    std::printf("A7 %s mirror symmetry: max defect %.3g over full runs (gate <= %.0e), "
                "%.1f s\n",
                ok ? "PASS" : "FAIL", worst, kSymmetryTol, tm.elapsed());
    return ok;
}

bool a8_transport_oracles() {
    Timer tm;
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> wgt(0.05, 1.0);
    auto cloud = [&](std::size_t n, bool weighted) {
        transport::DiscreteMeasure m;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            m.x.push_back(pos(gen));
            m.y.push_back(pos(gen));
            m.w.push_back(weighted ? wgt(gen) : 1.0);
            s += m.w.back();
        }
        for (double& v : m.w) v /= s;
        return m;
    };

    double worst_lp = 0.0;
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 1 + gen() % 64;
        transport::DiscreteMeasure a = cloud(n, false), b = cloud(n, false);
        for (std::size_t k = 0; k < n; ++k) a.y[k] = b.y[k] = 0.0;
        worst_lp = std::max(worst_lp, std::abs(transport::w1_exact_small(a, b) -
                                               transport::w1_exact_1d(a.x, b.x)));
    }

    double worst_axiom = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const auto a = cloud(2 + gen() % 40, true);
        const auto b = cloud(2 + gen() % 40, true);
        const auto c = cloud(2 + gen() % 40, true);
        const double ab = transport::w1_exact_small(a, b);
        const double ba = transport::w1_exact_small(b, a);
        const double ac = transport::w1_exact_small(a, c);
        const double cb = transport::w1_exact_small(c, b);
        worst_axiom = std::max({worst_axiom, std::abs(ab - ba),
                                transport::w1_exact_small(a, a), ab - (ac + cb), -ab});
    }

    double worst_sliced = 0.0;  // sliced minus exact; must stay <= ~0
    for (int inst = 0; inst < 25; ++inst) {
        const auto a = cloud(64 + gen() % 65, true);
        const auto b = cloud(64 + gen() % 65, true);
        const double exact = transport::w1_exact_small(a, b);
        const double sliced = transport::sliced_w1(a, b, 48, 1000 + inst).value;
        worst_sliced = std::max(worst_sliced, sliced - exact * (1.0 + kTransportTol));
    }

    const bool ok = worst_lp <= kTransportTol && worst_axiom <= kTransportTol &&
                    worst_sliced <= 0.0;
    std::printf("A8 %s transport oracles: line-vs-LP gap %.2g (200 inst), metric-axiom "
                "defect %.2g (100 triples), sliced-exact excess %.2g (gates <= %.0e), "
                "%.1f s\n",
                ok ? "PASS" : "FAIL", worst_lp, worst_axiom, worst_sliced, kTransportTol,
                tm.elapsed());
    return ok;
}

bool a9_drift_equivalence() {
    Timer tm;
    std::mt19937_64 gen(77);
    double worst = 0.0, worst_sum = 0.0;
    bool sum_exact = true;
    std::vector<double> ax, ay, bx, by;
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 2 + gen() % 511;
        std::normal_distribution<double> g(0.0, 0.3 + 0.7 * double(gen() % 8) / 7.0);
        ParticleEnsemble z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z.x[i] = g(gen);
            z.y[i] = g(gen);
        }
        particles::DriftEvaluator direct(0.1, particles::DriftMode::kDirectN2);
        particles::DriftEvaluator cell(0.1, particles::DriftMode::kCellList);
        direct.evaluate(z, ax, ay);
        cell.evaluate(z, bx, by);
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max({worst, std::abs(ax[i] - bx[i]), std::abs(ay[i] - by[i])});
            sx += ax[i];
            sy += ay[i];
        }
        if (sx != 0.0 || sy != 0.0) sum_exact = false;
        worst_sum = std::max({worst_sum, std::abs(sx), std::abs(sy)});
    }
    const bool ok = worst <= kDriftAgreeTol && sum_exact;
    std::printf("A9 %s neighbor-sweep vs direct drift: max componentwise gap %.3g over "
                "200 ensembles (gate <= %.0e); direct drift sums %s zero (max |sum| = "
                "%g), %.1f s\n",
                ok ? "PASS" : "FAIL", worst, kDriftAgreeTol,
                sum_exact ? "exactly" : "NOT exactly", worst_sum, tm.elapsed());
    return ok;
}

bool a10_particle_convergence() {
    Timer tm;
    const SimConfig base = app::base_config("n-rate", {});  // eps=0.1, D=0.15, seed 1
    const std::vector<int> ladder = {2000, 4000, 8000};
    const int n_seeds = 5;
    const app::NRate r = app::n_rate_core(base, ladder, n_seeds);

    // seed-averaged terminal distance and trajectory deviation per N
    std::map<int, double> w1, dev;
    std::map<int, int> cnt;
    bool aligned = true;
    for (const app::NRateRun& run : r.runs) {
        w1[run.n] += run.w1_sliced;
        cnt[run.n] += 1;
        if (run.t.size() != r.fv_t.size()) {
            aligned = false;
            continue;
        }
        double d = 0.0;
        for (std::size_t k = 0; k < run.t.size(); ++k)
            d += std::abs(run.cov[k] - r.fv_cov[k]);
        dev[run.n] += d / double(run.t.size());
    }
    for (int n : ladder) {
        w1[n] /= cnt[n];
        dev[n] /= cnt[n];
    }
    const bool w1_decreasing = w1[2000] > w1[4000] && w1[4000] > w1[8000];
    const bool approach = aligned && dev[8000] < dev[2000];
    const double secs = tm.elapsed();
    const bool ok = w1_decreasing && approach && secs < kNRateBudgetSec;
    std::printf("A10 %s particle convergence: mean terminal sliced W1 %.4g / %.4g / %.4g "
                "for N = 2000/4000/8000 (strictly decreasing: %s); mean trajectory "
                "deviation %.3g -> %.3g (approaching: %s), %.1f s (< %.0f s)\n",
                ok ? "PASS" : "FAIL", w1[2000], w1[4000], w1[8000],
                w1_decreasing ? "yes" : "NO", dev[2000], dev[8000],
                approach ? "yes" : "NO", secs, kNRateBudgetSec);
    return ok;
}

bool a11_eps_cauchy() {
    Timer tm;
    const SimConfig base = app::base_config("eps-rate", {});  // t_end = 1
    const app::EpsRate r = app::eps_rate_core(base, {0.4, 0.2, 0.1, 0.05});
    double g04 = 0, g02 = 0, g01 = 0;
    for (const app::EpsRateRow& row : r.rows) {
        if (row.eps == 0.4) g04 = row.l1_half;
        if (row.eps == 0.2) g02 = row.l1_half;
        if (row.eps == 0.1) g01 = row.l1_half;
    }
    const bool ok = g04 > g02 && g02 > g01 && r.slope_half > 0.0;
    std::printf("A11 %s smoothing-width Cauchy gaps at t=1: L1 %.4g > %.4g > %.4g along "
                "eps 0.4/0.2/0.1 (%s), fitted log-log order %.3f (> 0), %.1f s\n",
                ok ? "PASS" : "FAIL", g04, g02, g01,
                (g04 > g02 && g02 > g01) ? "strictly decreasing" : "NOT decreasing",
                r.slope_half, tm.elapsed());
    return ok;
}

bool a12_coupling_gap() {
    Timer tm;
    const SimConfig base = app::base_config("coupling", {});  // eps=0.1, t_end=1
    const particles::ForceTimeline tl =
        app::make_force_timeline(base, 10.0 * base.dt, "");
    const std::vector<app::CouplingRun> runs = app::coupling_core(base, {1000, 4000}, 5, tl);
    bool zero_start = true;
    std::map<int, double> gap;
    std::map<int, int> cnt;
    for (const app::CouplingRun& run : runs) {
        if (run.series.mean_gap.front() != 0.0) zero_start = false;
        gap[run.n] += run.series.mean_gap.back();
        cnt[run.n] += 1;
    }
    for (auto& [n, v] : gap) v /= cnt[n];
    const double secs = tm.elapsed();
    const bool ok = zero_start && gap[4000] < gap[1000] && secs < kCouplingBudgetSec;
    std::printf("A12 %s same-noise coupling: mean gap at t=1 %.4g (N=1000) -> %.4g "
                "(N=4000) (%s), initial gap %s zero, %.1f s (< %.0f s)\n",
                ok ? "PASS" : "FAIL", gap[1000], gap[4000],
                gap[4000] < gap[1000] ? "decreasing" : "NOT decreasing",
                zero_start ? "exactly" : "NOT exactly", secs, kCouplingBudgetSec);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        const char* name;
        bool (*fn)();
    };
    const Entry all[] = {
        {"A1", a1_heat_oracle},     {"A2", a2_conservation},
        {"A3", a3_divergence_identities}, {"A4", a4_norm_histories},
        {"A5", a5_moment_law},      {"A6", a6_exponential_moment},
        {"A7", a7_symmetry},        {"A8", a8_transport_oracles},
        {"A9", a9_drift_equivalence}, {"A10", a10_particle_convergence},
        {"A11", a11_eps_cauchy},    {"A12", a12_coupling_gap},
    };
    int failures = 0, ran = 0;
    for (const Entry& e : all) {
        bool wanted = argc < 2;
        for (int k = 1; k < argc; ++k)
            if (std::strcmp(argv[k], e.name) == 0) wanted = true;
        if (!wanted) continue;
        ++ran;
        try {
            if (!e.fn()) ++failures;
        } catch (const std::exception& ex) {
            ++failures;
            std::printf("%s FAIL exception: %s\n", e.name, ex.what());
        }
    }
    if (ran == 0) {
        std::printf("no such criterion; expected names A1 .. A12\n");
        return 2;
    }
    std::printf("acceptance: %d/%d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
