#include "mot/forces/grid_force.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mot/core/errors.hpp"
#include "mot/forces/smooth_kernel.hpp"

// Line-based implementation. Every per-line routine accumulates either
// directionally (independent left-to-right and right-to-left running sums) or
// in +/-offset pairs ordered by |offset|, so a mirrored input produces the
// bit-for-bit mirrored (or negated) output. Full-run symmetry preservation
// rests on this.

namespace mot::forces {
namespace {

// out[i] = sum_{i'<i} in[i'] - sum_{i'>i} in[i'], times scale.
void signed_mass_split(const double* in, double* out, int n, double scale) {
    std::vector<double> left(n), right(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        left[i] = s;
        s += in[i];
    }
    s = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        right[i] = s;
        s += in[i];
    }
    for (int i = 0; i < n; ++i) out[i] = scale * (left[i] - right[i]);
}

// out[i] = sum_{i'} |x_i - x_i'| in[i'] via four directional sums;
// coordinates negate exactly under mirroring, so out mirrors exactly.
void abs_kernel_line(const double* in, double* out, int n, const double* coord) {
    std::vector<double> s(n), t(n), sx(n), tx(n);
    double a = 0.0, b = 0.0;
    for (int i = 0; i < n; ++i) {
        s[i] = a;
        sx[i] = b;
        a += in[i];
        b += coord[i] * in[i];
    }
    a = 0.0;
    b = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        t[i] = a;
        tx[i] = b;
        a += in[i];
        b += coord[i] * in[i];
    }
    for (int i = 0; i < n; ++i) {
        const double lhs = coord[i] * s[i] - sx[i];
        const double rhs = tx[i] - coord[i] * t[i];
        out[i] = lhs + rhs;
    }
}

// out[i] += sum_{d=1..K} c[d] * (in[i-d] - in[i+d]); odd in the offset.
void odd_band(const double* in, double* out, int n, const std::vector<double>& c) {
    const int K = int(c.size()) - 1;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const int dmax = std::min(K, n - 1);
        for (int d = 1; d <= dmax; ++d) {
            const double lo = (i - d >= 0) ? in[i - d] : 0.0;
            const double hi = (i + d < n) ? in[i + d] : 0.0;
            acc += c[d] * (lo - hi);
        }
        out[i] += acc;
    }
}

// out[i] += c[0]*in[i] + sum_{d=1..K} c[d] * (in[i-d] + in[i+d]); even.
void even_band(const double* in, double* out, int n, const std::vector<double>& c) {
    const int K = int(c.size()) - 1;
    for (int i = 0; i < n; ++i) {
        double acc = c[0] * in[i];
        const int dmax = std::min(K, n - 1);
        for (int d = 1; d <= dmax; ++d) {
            const double lo = (i - d >= 0) ? in[i - d] : 0.0;
            const double hi = (i + d < n) ? in[i + d] : 0.0;
            acc += c[d] * (lo + hi);
        }
        out[i] += acc;
    }
}

// Band half-width beyond which the smoothed sign is exactly +/-1 in double
// precision (and the potential correction is below rounding).
int band_width(double eps, double delta) {
    return int(std::ceil(6.25 * eps * std::numbers::sqrt2 / delta)) + 1;
}

// c[d] = sgn_eps(d*delta) - 1  (the correction to the step kernel)
std::vector<double> force_band(double eps, double delta, int n) {
    const SmoothKernel k{eps};
    const int K = std::min(band_width(eps, delta), n - 1);
    std::vector<double> c(K + 1, 0.0);
    for (int d = 1; d <= K; ++d) c[d] = k.sgn(double(d) * delta) - 1.0;
    return c;
}

// c[d] = antideriv(d*delta) - d*delta  (correction to the |.| kernel)
std::vector<double> potential_band(double eps, double delta, int n) {
    const SmoothKernel k{eps};
    const int K = std::min(band_width(eps, delta), n - 1);
    std::vector<double> c(K + 1, 0.0);
    for (int d = 0; d <= K; ++d) c[d] = k.antideriv(double(d) * delta) - double(d) * delta;
    return c;
}

std::vector<double> x_coords(const Grid2D& g) {
    std::vector<double> c(g.nx);
    for (int i = 0; i < g.nx; ++i) c[i] = g.x(i);
    return c;
}

std::vector<double> y_coords(const Grid2D& g) {
    std::vector<double> c(g.ny);
    for (int j = 0; j < g.ny; ++j) c[j] = g.y(j);
    return c;
}

template <class LineFn>
void over_rows(const DensityField& in, DensityField& out, LineFn fn) {
    for (int j = 0; j < in.grid.ny; ++j) fn(in.row(j), out.row(j), in.grid.nx);
}

template <class LineFn>
void over_cols(const DensityField& in, DensityField& out, LineFn fn) {
    const int nx = in.grid.nx, ny = in.grid.ny;
    std::vector<double> buf(ny), res(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) buf[j] = in.at(i, j);
        fn(buf.data(), res.data(), ny);
        for (int j = 0; j < ny; ++j) out.at(i, j) = res[j];
    }
}

// One-axis Gaussian smoothing with per-source normalization: exact mass,
// exact mirror symmetry (|offset|-paired accumulation throughout).
void mollify_line(const double* in, double* out, int n, const std::vector<double>& w) {
    const int K = std::min(int(w.size()) - 1, n - 1);
    std::vector<double> q(n);  // in / (per-source in-domain weight)
    for (int i = 0; i < n; ++i) {
        double W = w[0];
        for (int d = 1; d <= K; ++d) {
            double t = 0.0;
            if (i - d >= 0) t += w[d];
            if (i + d < n) t += w[d];
            W += t;
        }
        q[i] = in[i] / W;
    }
    for (int i = 0; i < n; ++i) {
        double acc = w[0] * q[i];
        for (int d = 1; d <= K; ++d) {
            const double lo = (i - d >= 0) ? q[i - d] : 0.0;
            const double hi = (i + d < n) ? q[i + d] : 0.0;
            acc += w[d] * (lo + hi);
        }
        out[i] = acc;
    }
}

std::vector<double> mollify_weights(double eps, double delta) {
    const int K = std::max(1, int(std::ceil(7.5 * eps / delta)));
    std::vector<double> w(K + 1);
    for (int d = 0; d <= K; ++d) {
        const double t = double(d) * delta / eps;
        w[d] = std::exp(-0.5 * t * t);
    }
    return w;
}

DensityField mollify_x(const DensityField& rho, double eps) {
    DensityField out(rho.grid);
    const auto w = mollify_weights(eps, rho.grid.dx());
    over_rows(rho, out, [&](const double* in, double* o, int n) { mollify_line(in, o, n, w); });
    return out;
}

DensityField mollify_y(const DensityField& rho, double eps) {
    DensityField out(rho.grid);
    const auto w = mollify_weights(eps, rho.grid.dy());
    over_cols(rho, out, [&](const double* in, double* o, int n) { mollify_line(in, o, n, w); });
    return out;
}

void require_eps(double eps) {
    if (!(eps > 0.0)) throw ConfigError("smoothing width must be positive");
}

}  // namespace

ForceField singular_force(const DensityField& rho) {
    const Grid2D& g = rho.grid;
    ForceField f{DensityField(g), DensityField(g)};
    const double sx = -g.dx(), sy = -g.dy();
    over_rows(rho, f.fx, [&](const double* in, double* o, int n) {
        signed_mass_split(in, o, n, sx);
    });
    over_cols(rho, f.fy, [&](const double* in, double* o, int n) {
        signed_mass_split(in, o, n, sy);
    });
    return f;
}

ForceField regularized_force(const DensityField& rho, double eps) {
    require_eps(eps);
    const Grid2D& g = rho.grid;
    ForceField f{DensityField(g), DensityField(g)};

    const DensityField ry = mollify_y(rho, eps);  // x-force sees y-smoothed mass
    const auto cx = force_band(eps, g.dx(), g.nx);
    over_rows(ry, f.fx, [&](const double* in, double* o, int n) {
        std::vector<double> conv(n);
        signed_mass_split(in, conv.data(), n, 1.0);
        odd_band(in, conv.data(), n, cx);
        for (int i = 0; i < n; ++i) o[i] = -g.dx() * conv[i];
    });

    const DensityField rx = mollify_x(rho, eps);
    const auto cy = force_band(eps, g.dy(), g.ny);
    over_cols(rx, f.fy, [&](const double* in, double* o, int n) {
        std::vector<double> conv(n);
        signed_mass_split(in, conv.data(), n, 1.0);
        odd_band(in, conv.data(), n, cy);
        for (int i = 0; i < n; ++i) o[i] = -g.dy() * conv[i];
    });
    return f;
}

ForceField force_field(const DensityField& rho, ForceMode mode, double eps) {
    return mode == ForceMode::kSingular ? singular_force(rho)
                                        : regularized_force(rho, eps);
}

DensityField mollify(const DensityField& rho, double eps) {
    require_eps(eps);
    return mollify_y(mollify_x(rho, eps), eps);
}

Potentials potentials(const DensityField& rho, ForceMode mode, double eps) {
    const Grid2D& g = rho.grid;
    Potentials p{DensityField(g), DensityField(g)};
    const auto xc = x_coords(g);
    const auto yc = y_coords(g);

    const bool smooth = (mode == ForceMode::kRegularized);
    if (smooth) require_eps(eps);
    DensityField src_u = smooth ? mollify_y(rho, eps) : rho;
    DensityField src_v = smooth ? mollify_x(rho, eps) : rho;

    const auto bu = smooth ? potential_band(eps, g.dx(), g.nx) : std::vector<double>{};
    over_rows(src_u, p.U, [&](const double* in, double* o, int n) {
        abs_kernel_line(in, o, n, xc.data());
        if (smooth) even_band(in, o, n, bu);
        for (int i = 0; i < n; ++i) o[i] *= g.dx();
    });

    const auto bv = smooth ? potential_band(eps, g.dy(), g.ny) : std::vector<double>{};
    over_cols(src_v, p.V, [&](const double* in, double* o, int n) {
        abs_kernel_line(in, o, n, yc.data());
        if (smooth) even_band(in, o, n, bv);
        for (int i = 0; i < n; ++i) o[i] *= g.dy();
    });
    return p;
}

}  // namespace mot::forces
