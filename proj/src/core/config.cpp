#include "mot/core/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mot/core/errors.hpp"

namespace mot {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + val + "'");
    }
}

long long parse_int(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + val + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const unsigned long long i = std::stoull(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an unsigned integer: '" + val + "'");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

        if (key == "D") cfg.D = parse_double(key, val);
        else if (key == "eps") cfg.eps = parse_double(key, val);
        else if (key == "dt") cfg.dt = parse_double(key, val);
        else if (key == "t_end") cfg.t_end = parse_double(key, val);
        else if (key == "nx") cfg.nx = static_cast<int>(parse_int(key, val));
        else if (key == "ny") cfg.ny = static_cast<int>(parse_int(key, val));
        else if (key == "x_min") cfg.x_min = parse_double(key, val);
        else if (key == "x_max") cfg.x_max = parse_double(key, val);
        else if (key == "y_min") cfg.y_min = parse_double(key, val);
        else if (key == "y_max") cfg.y_max = parse_double(key, val);
        else if (key == "n_particles") cfg.n_particles = static_cast<int>(parse_int(key, val));
        else if (key == "seed") cfg.seed = parse_u64(key, val);
        else if (key == "ic") {
            if (val == "gaussian") cfg.ic.kind = IcSpec::Kind::kGaussian;
            else if (val == "gaussian_aniso") cfg.ic.kind = IcSpec::Kind::kGaussianAniso;
            else if (val == "disc") cfg.ic.kind = IcSpec::Kind::kDisc;
            else throw ConfigError("config key 'ic': unknown kind '" + val +
                                   "' (expected gaussian | gaussian_aniso | disc)");
        }
        else if (key == "sigma") cfg.ic.sigma = parse_double(key, val);
        else if (key == "sigma_x") cfg.ic.sigma_x = parse_double(key, val);
        else if (key == "sigma_y") cfg.ic.sigma_y = parse_double(key, val);
        else if (key == "radius") cfg.ic.radius = parse_double(key, val);
        else if (key == "mass") cfg.ic.mass = parse_double(key, val);
        else if (key == "force_mode") {
            if (val == "singular") cfg.force_mode = ForceMode::kSingular;
            else if (val == "regularized") cfg.force_mode = ForceMode::kRegularized;
            else if (val == "none") cfg.force_mode = ForceMode::kNone;
            else throw ConfigError("config key 'force_mode': expected none | singular | regularized, got '" + val + "'");
        }
        else if (key == "limiter") {
            if (val == "none") cfg.limiter = Limiter::kNone;
            else if (val == "minmod") cfg.limiter = Limiter::kMinmod;
            else throw ConfigError("config key 'limiter': expected none | minmod, got '" + val + "'");
        }
        else if (key == "record_interval") cfg.record_interval = parse_double(key, val);
        else if (key == "snapshot_interval") cfg.snapshot_interval = parse_double(key, val);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    validate(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const SimConfig& cfg) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(cfg.D >= 0.0, "D must be >= 0");
    require(cfg.eps > 0.0, "eps must be > 0");
    require(cfg.dt > 0.0, "dt must be > 0");
    require(cfg.t_end >= 0.0, "t_end must be >= 0");
    require(cfg.nx >= 4 && cfg.ny >= 4, "grid must be at least 4x4");
    require(cfg.x_max > cfg.x_min && cfg.y_max > cfg.y_min, "grid bounds must be ordered");
    require(cfg.n_particles >= 1, "n_particles must be >= 1");
    require(cfg.ic.mass > 0.0, "mass must be > 0");
    require(cfg.ic.sigma > 0.0 && cfg.ic.sigma_x > 0.0 && cfg.ic.sigma_y > 0.0,
            "sigma values must be > 0");
    require(cfg.ic.radius > 0.0, "radius must be > 0");
    require(cfg.record_interval > 0.0, "record_interval must be > 0");
    require(cfg.snapshot_interval >= 0.0, "snapshot_interval must be >= 0");
}

std::string to_text(const SimConfig& cfg) {
    std::ostringstream out;
    out << "D = " << fmt(cfg.D) << "\n"
        << "eps = " << fmt(cfg.eps) << "\n"
        << "dt = " << fmt(cfg.dt) << "\n"
        << "t_end = " << fmt(cfg.t_end) << "\n"
        << "nx = " << cfg.nx << "\n"
        << "ny = " << cfg.ny << "\n"
        << "x_min = " << fmt(cfg.x_min) << "\n"
        << "x_max = " << fmt(cfg.x_max) << "\n"
        << "y_min = " << fmt(cfg.y_min) << "\n"
        << "y_max = " << fmt(cfg.y_max) << "\n"
        << "n_particles = " << cfg.n_particles << "\n"
        << "seed = " << cfg.seed << "\n";
    switch (cfg.ic.kind) {
        case IcSpec::Kind::kGaussian: out << "ic = gaussian\n"; break;
        case IcSpec::Kind::kGaussianAniso: out << "ic = gaussian_aniso\n"; break;
        case IcSpec::Kind::kDisc: out << "ic = disc\n"; break;
    }
    out << "sigma = " << fmt(cfg.ic.sigma) << "\n"
        << "sigma_x = " << fmt(cfg.ic.sigma_x) << "\n"
        << "sigma_y = " << fmt(cfg.ic.sigma_y) << "\n"
        << "radius = " << fmt(cfg.ic.radius) << "\n"
        << "mass = " << fmt(cfg.ic.mass) << "\n"
        << "force_mode = "
        << (cfg.force_mode == ForceMode::kSingular
                ? "singular"
                : (cfg.force_mode == ForceMode::kRegularized ? "regularized" : "none"))
        << "\n"
        << "limiter = " << (cfg.limiter == Limiter::kMinmod ? "minmod" : "none") << "\n"
        << "record_interval = " << fmt(cfg.record_interval) << "\n"
        << "snapshot_interval = " << fmt(cfg.snapshot_interval) << "\n";
    return out.str();
}

}  // namespace mot
