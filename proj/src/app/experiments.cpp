#include "mot/app/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "mot/core/ensemble.hpp"
#include "mot/core/errors.hpp"
#include "mot/core/io.hpp"
#include "mot/diagnostics/observables.hpp"
#include "mot/forces/grid_force.hpp"
#include "mot/fv/solver.hpp"
#include "mot/particles/deposit.hpp"
#include "mot/particles/stepper.hpp"
#include "mot/transport/wasserstein.hpp"

namespace mot::app {
namespace {

namespace fs = std::filesystem;

// Gates of the self-checking presets (heat-check) and of every recorded grid
// run: conservation must hold to round-off or the run aborts loudly.
constexpr double kMassDriftTol = 1e-10;
constexpr double kClipFracTol = 1e-10;
constexpr double kHeatErrTol = 0.02;
constexpr double kHeatRatioMin = 1.8;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

bool centered(const SimConfig& c) {
    return c.x_min == -c.x_max && c.y_min == -c.y_max;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_resolved(const std::string& out_dir, const SimConfig& cfg,
                    const std::string& extras) {
    // comment lines keep the file reloadable through --config
    write_text_file(out_dir + "/config_resolved.txt", to_text(cfg) + extras);
}

// least-squares slope of ln(y) against ln(x); NaN with fewer than two points
double fit_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& [x, y] : pts) {
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(y)) continue;
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double d = double(n) * sxx - sx * sx;
    return (double(n) * sxy - sx * sy) / d;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_known(const std::string& preset) {
    static const char* names[] = {"contour", "norms",    "n-rate",
                                  "eps-rate", "coupling", "heat-check"};
    for (const char* n : names)
        if (preset == n) return;
    throw ConfigError("unknown preset: " + preset);
}

}  // namespace

SimConfig base_config(const std::string& preset, const RunOptions& opt) {
    require_known(preset);
    SimConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    } else {
        cfg.limiter = Limiter::kMinmod;
        if (preset == "contour") {
            cfg.t_end = 5.0;
            cfg.n_particles = 10000;
        } else if (preset == "norms") {
            cfg.t_end = 5.0;
            cfg.force_mode = ForceMode::kSingular;
        } else if (preset == "n-rate") {
            cfg.t_end = 2.5;
            cfg.dt = 5e-3;
        } else if (preset == "eps-rate") {
            cfg.t_end = 1.0;
        } else if (preset == "coupling") {
            cfg.t_end = 1.0;
            cfg.n_particles = 4000;
        } else {  // heat-check
            cfg.t_end = 1.0;
            cfg.force_mode = ForceMode::kNone;
        }
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.D) cfg.D = *opt.D;
    if (opt.eps) cfg.eps = *opt.eps;
    if (opt.t_end) cfg.t_end = *opt.t_end;
    if (opt.n_particles) cfg.n_particles = *opt.n_particles;
    if (opt.grid) {
        cfg.nx = *opt.grid;
        cfg.ny = *opt.grid;
    }
    validate(cfg);
    return cfg;
}

ObservableSeries run_fv_series(const SimConfig& cfg, double lambda) {
    fv::Solver s(cfg);
    ObservableSeries out;
    const double m0 = s.initial_mass();
    s.on_step = [&](const fv::StepInfo& info) {
        out.mass_drift_max = std::max(out.mass_drift_max, std::abs(info.mass - m0) / m0);
        if (info.mass > 0.0)
            out.clip_frac_max = std::max(out.clip_frac_max, info.clipped / info.mass);
    };
    const bool sym = centered(cfg);
    auto rec = [&](double t) {
        const DensityField& r = s.density();
        out.t.push_back(t);
        out.mass.push_back(diagnostics::total_mass(r));
        out.l2.push_back(diagnostics::lp_norm(r, 2.0));
        out.linf.push_back(diagnostics::linf_norm(r));
        out.m2.push_back(diagnostics::moment_k(r, 2));
        out.entropy.push_back(diagnostics::entropy(r));
        out.expm.push_back(diagnostics::exp_moment(r, lambda));
        out.cov.push_back(diagnostics::covariance_stat(r));
        out.sym.push_back(sym ? diagnostics::symmetry_defect(r) : 0.0);
    };
    rec(0.0);
    long k = 1;
    while (s.time() < cfg.t_end - 1e-12) {
        s.advance_to(std::min(double(k) * cfg.record_interval, cfg.t_end));
        rec(s.time());
        ++k;
    }
    if (out.mass_drift_max > kMassDriftTol)
        throw NumericalError("mass drift " + fmt_g(out.mass_drift_max) +
                             " exceeds the conservation budget");
    if (out.clip_frac_max > kClipFracTol)
        throw NumericalError("clipped negative mass " + fmt_g(out.clip_frac_max) +
                             " of total in one step exceeds the budget");
    out.final_density = s.density();
    return out;
}

DensityField heat_box_reference(const SimConfig& cfg, double t) {
    if (!centered(cfg)) throw ConfigError("the analytic diffusion reference needs a centered box");
    if (cfg.ic.kind != IcSpec::Kind::kGaussian)
        throw ConfigError("the analytic diffusion reference needs the isotropic Gaussian start");
    const Grid2D g = cfg.grid();
    const double var = cfg.ic.sigma * cfg.ic.sigma + 2.0 * cfg.D * t;
    // reflecting walls: image sources at every shift of one full period
    auto line = [var](double u, double half_width) {
        double s = 0.0;
        for (int m = -3; m <= 3; ++m) {
            const double d = u - 2.0 * half_width * double(m);
            s += std::exp(-0.5 * d * d / var);
        }
        return s;
    };
    DensityField ref(g);
    for (int j = 0; j < g.ny; ++j) {
        const double hy = line(g.y(j), cfg.y_max);
        for (int i = 0; i < g.nx; ++i) ref.at(i, j) = hy * line(g.x(i), cfg.x_max);
    }
    const double total = diagnostics::total_mass(ref);
    const double scale = cfg.ic.mass / total;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) ref.at(i, j) *= scale;
    return ref;
}

HeatCheck heat_check_core(const SimConfig& cfg) {
    SimConfig base = cfg;
    base.force_mode = ForceMode::kNone;
    auto rel_err = [](const SimConfig& c) {
        fv::Solver s(c);
        s.advance_to(c.t_end);
        const DensityField ref = heat_box_reference(c, c.t_end);
        return diagnostics::l2_distance(s.density(), ref) / diagnostics::lp_norm(ref, 2.0);
    };
    HeatCheck out;
    out.err_coarse = rel_err(base);
    SimConfig fine = base;
    fine.nx *= 2;
    fine.ny *= 2;
    out.err_fine = rel_err(fine);
    // a D = 0 run reproduces the start exactly; call the ratio unbounded
    out.ratio = out.err_fine > 1e-12 ? out.err_coarse / out.err_fine
                                     : std::numeric_limits<double>::infinity();
    return out;
}

EpsRate eps_rate_core(const SimConfig& base, const std::vector<double>& ladder) {
    if (ladder.empty()) throw ConfigError("the smoothing-width ladder must not be empty");
    for (double e : ladder)
        if (!(e > 0.0)) throw ConfigError("smoothing widths must be > 0");

    std::vector<DensityField> fields;
    fields.reserve(ladder.size());
    for (double e : ladder) {
        SimConfig c = base;
        c.eps = e;
        c.force_mode = ForceMode::kRegularized;
        fv::Solver s(c);
        s.advance_to(c.t_end);
        fields.push_back(s.density());
    }
    SimConfig cs = base;
    cs.force_mode = ForceMode::kSingular;
    fv::Solver ss(cs);
    ss.advance_to(cs.t_end);
    const DensityField sing = ss.density();

    EpsRate out;
    std::vector<std::pair<double, double>> half_pts, sing_pts;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        EpsRateRow row{ladder[k], std::numeric_limits<double>::quiet_NaN(),
                       diagnostics::l1_distance(fields[k], sing)};
        for (std::size_t j = 0; j < ladder.size(); ++j)
            if (std::abs(ladder[j] - 0.5 * ladder[k]) <= 1e-12 * ladder[k])
                row.l1_half = diagnostics::l1_distance(fields[k], fields[j]);
        if (std::isfinite(row.l1_half)) half_pts.emplace_back(row.eps, row.l1_half);
        sing_pts.emplace_back(row.eps, row.l1_singular);
        out.rows.push_back(row);
    }
    out.slope_half = fit_slope(half_pts);
    out.slope_singular = fit_slope(sing_pts);
    return out;
}

NRate n_rate_core(const SimConfig& base, const std::vector<int>& ladder, int n_seeds) {
    if (ladder.empty()) throw ConfigError("the particle-count ladder must not be empty");
    if (n_seeds < 1) throw ConfigError("the seed ladder needs at least one seed");

    SimConfig fvc = base;
    fvc.force_mode = ForceMode::kRegularized;
    const ObservableSeries fv = run_fv_series(fvc, 1.0);
    NRate out;
    out.fv_t = fv.t;
    out.fv_cov = fv.cov;
    const transport::DiscreteMeasure fv_fine = transport::from_grid(fv.final_density);
    const transport::DiscreteMeasure fv_coarse =
        transport::from_grid_coarsened(fv.final_density);

    for (int n : ladder) {
        for (int s = 0; s < n_seeds; ++s) {
            SimConfig pc = base;
            pc.n_particles = n;
            pc.seed = base.seed + std::uint64_t(s);
            NRateRun run;
            run.n = n;
            run.seed = pc.seed;
            particles::RunOptions po;
            po.on_record = [&run](double t, const ParticleEnsemble& z) {
                run.t.push_back(t);
                run.cov.push_back(diagnostics::covariance_stat(z));
            };
            const ParticleEnsemble zf = particles::run_particles(pc, po);
            run.w1_sliced =
                transport::sliced_w1(transport::from_ensemble(zf), fv_fine, 64, pc.seed)
                    .value;
            const DensityField kde =
                particles::mollified_density(zf, pc.grid(), pc.eps, pc.ic.mass);
            run.w1_exact_coarse =
                transport::w1_exact_small(transport::from_grid_coarsened(kde), fv_coarse);
            out.runs.push_back(std::move(run));
        }
    }
    return out;
}

particles::ForceTimeline make_force_timeline(const SimConfig& cfg, double interval,
                                             const std::string& dir) {
    if (!(interval > 0.0)) throw ConfigError("snapshot interval must be > 0");
    if (!dir.empty()) ensure_dir(dir);
    particles::ForceTimeline tl;
    std::vector<std::string> names;
    fv::Solver s(cfg);
    auto sample = [&](double t) {
        tl.times.push_back(t);
        tl.fields.push_back(forces::force_field(s.density(), cfg.force_mode, cfg.eps));
        if (!dir.empty()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "rho_%05zu.dat", tl.times.size() - 1);
            write_density(dir + "/" + buf, s.density(), t);
            names.emplace_back(buf);
        }
    };
    sample(0.0);
    long k = 1;
    while (s.time() < cfg.t_end - 1e-12) {
        s.advance_to(std::min(double(k) * interval, cfg.t_end));
        sample(s.time());
        ++k;
    }
    if (!dir.empty()) {
        std::ostringstream m;
        m << "# schema=1\n";
        for (const std::string& n : names) m << n << "\n";
        write_text_file(dir + "/timeline.txt", m.str());
    }
    return tl;
}

particles::ForceTimeline load_force_timeline(const std::string& dir, double eps) {
    if (dir.empty())
        throw ConfigError(
            "the coupled run needs a grid-run snapshot directory (--fv-dir, or --make-fv to "
            "produce one)");
    const std::string manifest = dir + "/timeline.txt";
    std::ifstream in(manifest);
    if (!in) throw IoError("cannot open timeline manifest: " + manifest);
    particles::ForceTimeline tl;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const DensitySnapshot snap = read_density(dir + "/" + line);
        tl.times.push_back(snap.time);
        tl.fields.push_back(forces::regularized_force(snap.field, eps));
    }
    return tl;
}

std::vector<CouplingRun> coupling_core(const SimConfig& base, const std::vector<int>& ladder,
                                       int n_seeds,
                                       const particles::ForceTimeline& timeline) {
    if (ladder.empty()) throw ConfigError("the particle-count ladder must not be empty");
    if (n_seeds < 1) throw ConfigError("the seed ladder needs at least one seed");
    std::vector<CouplingRun> out;
    for (int n : ladder) {
        for (int s = 0; s < n_seeds; ++s) {
            SimConfig c = base;
            c.n_particles = n;
            c.seed = base.seed + std::uint64_t(s);
            out.push_back({n, c.seed, particles::run_coupled(c, timeline)});
        }
    }
    return out;
}

namespace {

// ---- plot scripts -------------------------------------------------------
// Emitted next to the data; they read only files the preset wrote.

const char* kSnapshotLoader = R"PY(import numpy as np


def load_density(path):
    with open(path) as f:
        assert f.readline().startswith("# density snapshot")
        kv = {}
        for _ in range(7):
            key, _, val = f.readline().partition("=")
            kv[key.strip()] = float(val)
        z = np.loadtxt(f)
    nx, ny = int(kv["nx"]), int(kv["ny"])
    z = z.reshape(ny, nx)
    dx = (kv["x_max"] - kv["x_min"]) / nx
    dy = (kv["y_max"] - kv["y_min"]) / ny
    x = kv["x_min"] + dx * (np.arange(nx) + 0.5)
    y = kv["y_min"] + dy * (np.arange(ny) + 0.5)
    return x, y, z, kv["time"]
)PY";

const char* kContourScript = R"PY(
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, axes = plt.subplots(1, 2, figsize=(11, 5), sharey=True)
panels = [("fv_final.dat", "grid solver"), ("particle_final.dat", "particle average")]
for ax, (path, title) in zip(axes, panels):
    x, y, z, t = load_density(path)
    cs = ax.contourf(x, y, z, levels=30, cmap="viridis")
    fig.colorbar(cs, ax=ax)
    ax.set_title(f"{title}, t = {t:g}")
    ax.set_xlabel("x")
    ax.set_aspect("equal")
axes[0].set_ylabel("y")
fig.tight_layout()
fig.savefig("contour.png", dpi=150)
print("wrote contour.png")
)PY";

const char* kNormsScript = R"PY(import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

data = np.genfromtxt("norms.csv", delimiter=",", names=True, skip_header=1)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
for D in np.unique(data["D"]):
    rows = data[data["D"] == D]
    axes[0].plot(rows["t"], rows["l2"], label=f"D = {D:g}")
    axes[1].plot(rows["t"], rows["linf"], label=f"D = {D:g}")
axes[0].set_ylabel(r"$\|\rho\|_{L^2}$")
axes[1].set_ylabel(r"$\|\rho\|_{L^\infty}$")
for ax in axes:
    ax.set_xlabel("t")
    ax.legend()
fig.tight_layout()
fig.savefig("norms.png", dpi=150)
print("wrote norms.png")
)PY";

const char* kNRateScript = R"PY(import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

cov = np.genfromtxt("n_rate_cov.csv", delimiter=",", names=True, skip_header=1)
rate = np.genfromtxt("n_rate.csv", delimiter=",", names=True, skip_header=1)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))

ref = cov[cov["N"] == 0]
axes[0].plot(ref["t"], ref["cov"], "k--", label="grid reference")
for N in np.unique(cov["N"]):
    if N == 0:
        continue
    rows = cov[cov["N"] == N]
    mean = {}
    for t, c in zip(rows["t"], rows["cov"]):
        mean.setdefault(t, []).append(c)
    ts = sorted(mean)
    axes[0].plot(ts, [np.mean(mean[t]) for t in ts], label=f"N = {int(N)}")
axes[0].set_xlabel("t")
axes[0].set_ylabel("covariance statistic")
axes[0].legend()

Ns = np.unique(rate["N"])
for col, marker in [("w1_sliced", "o"), ("w1_exact_coarse", "s")]:
    means = [np.mean(rate[rate["N"] == N][col]) for N in Ns]
    axes[1].loglog(Ns, means, marker + "-", label=col)
axes[1].set_xlabel("N")
axes[1].set_ylabel("terminal $W_1$ to the grid density")
axes[1].legend()
fig.tight_layout()
fig.savefig("n_rate.png", dpi=150)
print("wrote n_rate.png")
)PY";

const char* kEpsRateScript = R"PY(import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

rows = np.genfromtxt("eps_rate.csv", delimiter=",", names=True, skip_header=1)
fig, ax = plt.subplots(figsize=(6, 4.5))
half = rows[np.isfinite(rows["l1_half"])]
ax.loglog(half["eps"], half["l1_half"], "o-", label=r"$L^1(\rho^{(\epsilon)}-\rho^{(\epsilon/2)})$")
ax.loglog(rows["eps"], rows["l1_singular"], "s-", label=r"$L^1(\rho^{(\epsilon)}-\rho)$")
if len(half) >= 2:
    p = np.polyfit(np.log(half["eps"]), np.log(half["l1_half"]), 1)
    ax.set_title(f"fitted order {p[0]:.2f}")
ax.set_xlabel(r"$\epsilon$")
ax.set_ylabel(r"$L^1$ gap at $t_{end}$")
ax.legend()
fig.tight_layout()
fig.savefig("eps_rate.png", dpi=150)
print("wrote eps_rate.png")
)PY";

const char* kCouplingScript = R"PY(import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

rows = np.genfromtxt("coupling.csv", delimiter=",", names=True, skip_header=1)
fig, ax = plt.subplots(figsize=(6, 4.5))
for N in np.unique(rows["N"]):
    sel = rows[rows["N"] == N]
    mean = {}
    for t, g in zip(sel["t"], sel["mean_gap"]):
        mean.setdefault(t, []).append(g)
    ts = sorted(mean)
    ax.plot(ts, [np.mean(mean[t]) for t in ts], label=f"N = {int(N)}")
ax.set_xlabel("t")
ax.set_ylabel("mean coupled-pair gap")
ax.legend()
fig.tight_layout()
fig.savefig("coupling.png", dpi=150)
print("wrote coupling.png")
)PY";

// ---- presets ------------------------------------------------------------

int cmd_contour(const RunOptions& opt) {
    const SimConfig cfg = base_config("contour", opt);
    const int seeds = opt.n_seeds.value_or(10);
    if (seeds < 1) throw ConfigError("the seed ladder needs at least one seed");
    ensure_dir(opt.out_dir);
    write_resolved(opt.out_dir, cfg,
                   "# preset = contour\n# seeds = " + std::to_string(seeds) + "\n");

    const auto t0 = std::chrono::steady_clock::now();
    fv::Solver s(cfg);
    write_density(opt.out_dir + "/fv_initial.dat", s.density(), 0.0);
    s.advance_to(cfg.t_end);
    write_density(opt.out_dir + "/fv_final.dat", s.density(), s.time());
    std::printf("grid run done (%.1f s)\n", seconds_since(t0));

    DensityField avg(cfg.grid());
    for (int k = 0; k < seeds; ++k) {
        SimConfig pc = cfg;
        pc.seed = cfg.seed + std::uint64_t(k);
        const ParticleEnsemble z = particles::run_particles(pc);
        const DensityField kde =
            particles::mollified_density(z, cfg.grid(), cfg.eps, cfg.ic.mass);
        for (int j = 0; j < cfg.ny; ++j)
            for (int i = 0; i < cfg.nx; ++i) avg.at(i, j) += kde.at(i, j) / double(seeds);
        std::printf("particle run %d/%d done (%.1f s)\n", k + 1, seeds, seconds_since(t0));
    }
    write_density(opt.out_dir + "/particle_final.dat", avg, cfg.t_end);
    write_text_file(opt.out_dir + "/plot_contour.py",
                    std::string(kSnapshotLoader) + kContourScript);
    return 0;
}

int cmd_norms(const RunOptions& opt) {
    const SimConfig cfg = base_config("norms", opt);
    std::vector<double> Ds = opt.D_list;
    if (Ds.empty()) Ds = opt.D ? std::vector<double>{*opt.D} : std::vector<double>{0.15, 0.25, 0.35};
    ensure_dir(opt.out_dir);
    std::string extras = "# preset = norms\n# D_list =";
    for (double d : Ds) extras += " " + fmt_g(d);
    write_resolved(opt.out_dir, cfg, extras + "\n");

    CsvWriter csv(opt.out_dir + "/norms.csv", {"D", "t", "l2", "linf"});
    for (double D : Ds) {
        SimConfig c = cfg;
        c.D = D;
        validate(c);
        const auto t0 = std::chrono::steady_clock::now();
        const ObservableSeries s = run_fv_series(c, 1.0);
        for (std::size_t k = 0; k < s.t.size(); ++k)
            csv.row({D, s.t[k], s.l2[k], s.linf[k]});
        std::printf("D = %g done: final L2 = %.6g, Linf = %.6g (%.1f s)\n", D, s.l2.back(),
                    s.linf.back(), seconds_since(t0));
    }
    csv.close();
    write_text_file(opt.out_dir + "/plot_norms.py", kNormsScript);
    return 0;
}

int cmd_n_rate(const RunOptions& opt) {
    const SimConfig cfg = base_config("n-rate", opt);
    std::vector<int> ladder = opt.n_list;
    if (ladder.empty())
        ladder = opt.n_particles ? std::vector<int>{*opt.n_particles}
                                 : std::vector<int>{2000, 4000, 8000};
    const int seeds = opt.n_seeds.value_or(5);
    ensure_dir(opt.out_dir);
    std::string extras = "# preset = n-rate\n# N_list =";
    for (int n : ladder) extras += " " + std::to_string(n);
    write_resolved(opt.out_dir, cfg, extras + "\n# seeds = " + std::to_string(seeds) + "\n");

    const auto t0 = std::chrono::steady_clock::now();
    const NRate r = n_rate_core(cfg, ladder, seeds);

    CsvWriter cov(opt.out_dir + "/n_rate_cov.csv", {"N", "seed", "t", "cov"});
    for (std::size_t k = 0; k < r.fv_t.size(); ++k)
        cov.row({0.0, 0.0, r.fv_t[k], r.fv_cov[k]});  // N = 0: grid reference
    for (const NRateRun& run : r.runs)
        for (std::size_t k = 0; k < run.t.size(); ++k)
            cov.row({double(run.n), double(run.seed), run.t[k], run.cov[k]});
    cov.close();

    CsvWriter rate(opt.out_dir + "/n_rate.csv",
                   {"eps", "N", "seed", "w1_sliced", "w1_exact_coarse", "t"});
    for (const NRateRun& run : r.runs)
        rate.row({cfg.eps, double(run.n), double(run.seed), run.w1_sliced,
                  run.w1_exact_coarse, cfg.t_end});
    rate.close();

    for (int n : ladder) {
        double m = 0.0;
        int c = 0;
        for (const NRateRun& run : r.runs)
            if (run.n == n) {
                m += run.w1_sliced;
                ++c;
            }
        std::printf("N = %5d: mean terminal sliced W1 = %.6g over %d seeds\n", n, m / c, c);
    }
    std::printf("n-rate done (%.1f s)\n", seconds_since(t0));
    write_text_file(opt.out_dir + "/plot_n_rate.py", kNRateScript);
    return 0;
}

int cmd_eps_rate(const RunOptions& opt) {
    const SimConfig cfg = base_config("eps-rate", opt);
    std::vector<double> ladder = opt.eps_list;
    if (ladder.empty())
        ladder = opt.eps ? std::vector<double>{*opt.eps}
                         : std::vector<double>{0.4, 0.2, 0.1, 0.05};
    ensure_dir(opt.out_dir);
    std::string extras = "# preset = eps-rate\n# eps_list =";
    for (double e : ladder) extras += " " + fmt_g(e);
    write_resolved(opt.out_dir, cfg, extras + "\n");

    const auto t0 = std::chrono::steady_clock::now();
    const EpsRate r = eps_rate_core(cfg, ladder);

    CsvWriter csv(opt.out_dir + "/eps_rate.csv", {"eps", "l1_half", "l1_singular"});
    for (const EpsRateRow& row : r.rows) {
        csv.row({row.eps, row.l1_half, row.l1_singular});
        std::printf("eps = %5g: L1 gap to eps/2 = %-12.6g to singular = %.6g\n", row.eps,
                    row.l1_half, row.l1_singular);
    }
    csv.close();
    write_text_file(opt.out_dir + "/eps_rate_fit.txt",
                    "slope_half = " + fmt_g(r.slope_half) +
                        "\nslope_singular = " + fmt_g(r.slope_singular) + "\n");
    std::printf("fitted orders: %.3f (half-width gaps), %.3f (singular gaps) (%.1f s)\n",
                r.slope_half, r.slope_singular, seconds_since(t0));
    write_text_file(opt.out_dir + "/plot_eps_rate.py", kEpsRateScript);
    return 0;
}

int cmd_coupling(const RunOptions& opt) {
    const SimConfig cfg = base_config("coupling", opt);
    std::vector<int> ladder = opt.n_list;
    if (ladder.empty())
        ladder = opt.n_particles ? std::vector<int>{*opt.n_particles}
                                 : std::vector<int>{1000, 2000, 4000};
    const int seeds = opt.n_seeds.value_or(5);
    ensure_dir(opt.out_dir);
    std::string extras = "# preset = coupling\n# N_list =";
    for (int n : ladder) extras += " " + std::to_string(n);
    write_resolved(opt.out_dir, cfg, extras + "\n# seeds = " + std::to_string(seeds) + "\n");

    const auto t0 = std::chrono::steady_clock::now();
    particles::ForceTimeline tl;
    if (opt.make_fv) {
        std::string dir = opt.fv_dir.empty() ? opt.out_dir + "/fv" : opt.fv_dir;
        tl = make_force_timeline(cfg, 10.0 * cfg.dt, dir);
        std::printf("grid timeline written to %s (%.1f s)\n", dir.c_str(), seconds_since(t0));
    } else {
        tl = load_force_timeline(opt.fv_dir, cfg.eps);
    }

    const std::vector<CouplingRun> runs = coupling_core(cfg, ladder, seeds, tl);
    CsvWriter csv(opt.out_dir + "/coupling.csv", {"N", "seed", "t", "mean_gap", "max_gap"});
    for (const CouplingRun& run : runs)
        for (std::size_t k = 0; k < run.series.t.size(); ++k)
            csv.row({double(run.n), double(run.seed), run.series.t[k],
                     run.series.mean_gap[k], run.series.max_gap[k]});
    csv.close();

    for (int n : ladder) {
        double m = 0.0;
        int c = 0;
        for (const CouplingRun& run : runs)
            if (run.n == n) {
                m += run.series.mean_gap.back();
                ++c;
            }
        std::printf("N = %5d: mean terminal gap = %.6g over %d seeds\n", n, m / c, c);
    }
    std::printf("coupling done (%.1f s)\n", seconds_since(t0));
    write_text_file(opt.out_dir + "/plot_coupling.py", kCouplingScript);
    return 0;
}

int cmd_heat_check(const RunOptions& opt) {
    const SimConfig cfg = base_config("heat-check", opt);
    ensure_dir(opt.out_dir);
    write_resolved(opt.out_dir, cfg, "# preset = heat-check\n");

    const auto t0 = std::chrono::steady_clock::now();
    const HeatCheck hc = heat_check_core(cfg);
    CsvWriter csv(opt.out_dir + "/heat_check.csv", {"n", "rel_l2_err"});
    csv.row({double(cfg.nx), hc.err_coarse});
    csv.row({double(2 * cfg.nx), hc.err_fine});
    csv.close();

    std::printf("relative L2 error: %.6g (%dx%d), %.6g (%dx%d)\n", hc.err_coarse, cfg.nx,
                cfg.ny, hc.err_fine, 2 * cfg.nx, 2 * cfg.ny);
    std::printf("refinement ratio: %.3f (%.1f s)\n", hc.ratio, seconds_since(t0));
    if (!(hc.err_coarse <= kHeatErrTol))
        throw NumericalError("diffusion check error " + fmt_g(hc.err_coarse) +
                             " exceeds " + fmt_g(kHeatErrTol));
    if (!(hc.ratio >= kHeatRatioMin))
        throw NumericalError("refinement ratio " + fmt_g(hc.ratio) + " is below " +
                             fmt_g(kHeatRatioMin));
    std::printf("heat-check passed\n");
    return 0;
}

}  // namespace

int run_preset(const std::string& name, const RunOptions& opt) {
    require_known(name);
    if (name == "contour") return cmd_contour(opt);
    if (name == "norms") return cmd_norms(opt);
    if (name == "n-rate") return cmd_n_rate(opt);
    if (name == "eps-rate") return cmd_eps_rate(opt);
    if (name == "coupling") return cmd_coupling(opt);
    return cmd_heat_check(opt);
}

}  // namespace mot::app
