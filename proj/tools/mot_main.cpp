#include <cstdio>
#include <exception>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "mot/app/experiments.hpp"
#include "mot/core/errors.hpp"

// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O or internal error.
int main(int argc, char** argv) {
    CLI::App cli{"attractive-cloud simulation toolkit"};
    cli.require_subcommand(1);

    mot::app::RunOptions opt;
    std::string preset;
    const std::pair<const char*, const char*> presets[] = {
        {"contour", "grid and particle densities at the final time"},
        {"norms", "L2/Linf norm histories over a diffusion-coefficient ladder"},
        {"n-rate", "particle-count convergence against the grid solution"},
        {"eps-rate", "smoothing-width convergence of the grid solution"},
        {"coupling", "same-noise gap between the particle system and its mean field"},
        {"heat-check", "pure-diffusion run against the closed-box analytic solution"},
    };
    for (const auto& [name, blurb] : presets) {
        CLI::App* sub = cli.add_subcommand(name, blurb);
        sub->callback([&preset, name = name] { preset = name; });
        sub->add_option("--config", opt.config_path, "run configuration (key = value lines)");
        sub->add_option("--seed", opt.seed, "base seed");
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--D", opt.D, "diffusion coefficient");
        sub->add_option("--eps", opt.eps, "interaction smoothing width");
        sub->add_option("--N", opt.n_particles, "particle count");
        sub->add_option("--grid", opt.grid, "square grid resolution");
        sub->add_option("--t-end", opt.t_end, "final time");
        sub->add_option("--seeds", opt.n_seeds, "number of seeds in ladder presets");
        sub->add_option("--D-list", opt.D_list, "comma-separated diffusion ladder")
            ->delimiter(',');
        sub->add_option("--eps-list", opt.eps_list, "comma-separated smoothing-width ladder")
            ->delimiter(',');
        sub->add_option("--N-list", opt.n_list, "comma-separated particle-count ladder")
            ->delimiter(',');
        if (std::string(name) == "coupling") {
            sub->add_option("--fv-dir", opt.fv_dir, "directory with grid-run snapshots");
            sub->add_flag("--make-fv", opt.make_fv, "produce the grid-run snapshots first");
        }
    }

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return mot::app::run_preset(preset, opt);
    } catch (const mot::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const mot::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const mot::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
}
