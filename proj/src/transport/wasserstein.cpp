#include "mot/transport/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "mot/core/errors.hpp"
#include "mot/core/rng.hpp"

namespace mot::transport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDust = 1e-15;  // supply/demand below this is spent

void normalize(DiscreteMeasure& m, const char* who) {
    double s = 0.0;
    for (double v : m.w) {
        if (!(v >= 0.0)) throw ConfigError(std::string(who) + ": negative weight");
        s += v;
    }
    if (!(s > 0.0)) throw ConfigError(std::string(who) + ": zero total weight");
    for (double& v : m.w) v /= s;
}

void check_measure(const DiscreteMeasure& m, const char* who) {
    if (m.size() == 0 || m.x.size() != m.size() || m.y.size() != m.size())
        throw ConfigError(std::string(who) + ": malformed measure");
    double s = 0.0;
    for (double v : m.w) {
        if (!(v >= 0.0)) throw ConfigError(std::string(who) + ": negative weight");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw ConfigError(std::string(who) + ": weights must sum to one");
}

// Exact W1 between weighted samples on the line: integral of the CDF gap
// over the merged breakpoints. Sorts its arguments in place.
double w1_1d_weighted(std::vector<std::pair<double, double>>& a,
                      std::vector<std::pair<double, double>>& b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double dist = 0.0, fa = 0.0, fb = 0.0;
    double t = std::min(a.front().first, b.front().first);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const double ta = i < a.size() ? a[i].first : kInf;
        const double tb = j < b.size() ? b[j].first : kInf;
        const double tn = std::min(ta, tb);
        dist += std::abs(fa - fb) * (tn - t);
        t = tn;
        while (i < a.size() && a[i].first == tn) fa += a[i++].second;
        while (j < b.size() && b[j].first == tn) fb += b[j++].second;
    }
    return dist;
}

}  // namespace

DiscreteMeasure from_grid(const DensityField& rho) {
    DiscreteMeasure m;
    const Grid2D& g = rho.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double v = rho.at(i, j);
            if (v < 0.0) throw ConfigError("grid measure: negative density cell");
            if (v > 0.0) {
                m.x.push_back(g.x(i));
                m.y.push_back(g.y(j));
                m.w.push_back(v);  // the common area factor cancels below
            }
        }
    normalize(m, "grid measure");
    return m;
}

DiscreteMeasure from_grid_coarsened(const DensityField& rho, std::size_t max_atoms) {
    if (max_atoms == 0) throw ConfigError("grid measure: atom budget must be positive");
    auto nonzero = [](const DensityField& f) {
        std::size_t c = 0;
        for (double v : f.v) c += (v > 0.0) ? 1 : 0;
        return c;
    };
    DensityField cur = rho;
    while (nonzero(cur) > max_atoms && (cur.grid.nx > 1 || cur.grid.ny > 1)) {
        const Grid2D& g = cur.grid;
        const Grid2D cg{(g.nx + 1) / 2, (g.ny + 1) / 2, g.x_min, g.x_max, g.y_min,
                        g.y_max};
        DensityField next(cg);
        const double fine_area = g.cell_area();
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                next.at(i / 2, j / 2) += cur.at(i, j) * fine_area;
        const double inv = 1.0 / cg.cell_area();
        for (double& v : next.v) v *= inv;
        cur = std::move(next);
    }
    return from_grid(cur);
}

DiscreteMeasure from_ensemble(const ParticleEnsemble& z) {
    if (z.n() == 0) throw ConfigError("ensemble measure: empty ensemble");
    DiscreteMeasure m;
    m.x = z.x;
    m.y = z.y;
    m.w.assign(z.n(), 1.0 / double(z.n()));
    return m;
}

DiscreteMeasure resample_to_equal(const DiscreteMeasure& mu, std::size_t n,
                                  std::uint64_t seed) {
    check_measure(mu, "resample");
    if (n == 0) throw ConfigError("resample: need at least one draw");
    std::vector<double> cum(mu.size());
    double run = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        run += mu.w[k];
        cum[k] = run;
    }
    DiscreteMeasure out;
    out.x.resize(n);
    out.y.resize(n);
    out.w.assign(n, 1.0 / double(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double u = CounterStream(seed, i).uniform(0, CounterStream::kResample) * run;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t k =
            std::min(static_cast<std::size_t>(it - cum.begin()), mu.size() - 1);
        out.x[i] = mu.x[k];
        out.y[i] = mu.y[k];
    }
    return out;
}

double w1_exact_1d(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size())
        throw ConfigError("1d distance: samples must have equal counts");
    if (a.empty()) throw ConfigError("1d distance: empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s / double(a.size());
}

double w1_exact_small(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    check_measure(mu, "exact distance");
    check_measure(nu, "exact distance");
    const std::size_t m = mu.size(), n = nu.size();
    if (m > kExactAtomCap || n > kExactAtomCap)
        throw ConfigError(
            "exact distance: more than " + std::to_string(kExactAtomCap) +
            " atoms on one side; use sliced_w1 (or coarsen) for large measures");

    std::vector<double> cost(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = std::hypot(mu.x[i] - nu.x[j], mu.y[i] - nu.y[j]);

    // Successive shortest paths on the bipartite transportation graph.
    // Node k < m is supply atom k; node m + j is demand atom j. pi holds the
    // Johnson potentials, so every residual arc keeps a nonnegative reduced
    // cost and Dijkstra applies.
    const std::size_t V = m + n;
    std::vector<double> surplus = mu.w, deficit = nu.w;
    std::vector<double> pi(V, 0.0), dist(V), flow(m * n, 0.0);
    std::vector<int> prev(V);
    std::vector<char> done(V);

    const std::size_t max_rounds = 64 * V + 64;
    std::size_t rounds = 0;
    while (true) {
        bool any_src = false, any_sink = false;
        for (std::size_t i = 0; i < m && !any_src; ++i) any_src = surplus[i] > kDust;
        for (std::size_t j = 0; j < n && !any_sink; ++j) any_sink = deficit[j] > kDust;
        // the 1e-12 normalization slack can leave one side with unmatchable dust
        if (!any_src || !any_sink) break;
        if (++rounds > max_rounds)
            throw NumericalError("exact distance: flow failed to converge");

        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        for (std::size_t i = 0; i < m; ++i)
            if (surplus[i] > kDust) dist[i] = 0.0;

        std::size_t sink = V;  // settled demand node with unmet deficit
        double d_sink = kInf;
        while (true) {
            std::size_t best = V;
            double bd = kInf;
            for (std::size_t k = 0; k < V; ++k)
                if (!done[k] && dist[k] < bd) {
                    bd = dist[k];
                    best = k;
                }
            if (best == V) break;
            done[best] = 1;
            if (best >= m && deficit[best - m] > kDust) {
                sink = best;
                d_sink = bd;
                break;
            }
            if (best < m) {
                const std::size_t i = best;
                for (std::size_t j = 0; j < n; ++j) {
                    const double rc =
                        std::max(0.0, cost[i * n + j] + pi[i] - pi[m + j]);
                    if (bd + rc < dist[m + j]) {
                        dist[m + j] = bd + rc;
                        prev[m + j] = static_cast<int>(i);
                    }
                }
            } else {
                const std::size_t j = best - m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (!(flow[i * n + j] > 0.0)) continue;
                    const double rc =
                        std::max(0.0, -cost[i * n + j] + pi[m + j] - pi[i]);
                    if (bd + rc < dist[i]) {
                        dist[i] = bd + rc;
                        prev[i] = static_cast<int>(m + j);
                    }
                }
            }
        }
        if (sink == V)
            throw NumericalError("exact distance: no augmenting path found");

        for (std::size_t k = 0; k < V; ++k) pi[k] += std::min(dist[k], d_sink);

        // bottleneck along the path, then push
        double delta = deficit[sink - m];
        for (std::size_t k = sink; prev[k] >= 0; k = static_cast<std::size_t>(prev[k])) {
            const std::size_t p = static_cast<std::size_t>(prev[k]);
            if (p >= m)  // backward arc demand -> supply removes flow (k, p)
                delta = std::min(delta, flow[k * n + (p - m)]);
            if (prev[p] < 0) delta = std::min(delta, surplus[p]);
        }
        for (std::size_t k = sink; prev[k] >= 0; k = static_cast<std::size_t>(prev[k])) {
            const std::size_t p = static_cast<std::size_t>(prev[k]);
            if (p < m)
                flow[p * n + (k - m)] += delta;  // supply -> demand
            else
                flow[k * n + (p - m)] -= delta;  // demand -> supply (undo)
        }
        std::size_t src = sink;
        while (prev[src] >= 0) src = static_cast<std::size_t>(prev[src]);
        surplus[src] -= delta;
        deficit[sink - m] -= delta;
    }

    double primal = 0.0;
    for (std::size_t k = 0; k < m * n; ++k) primal += flow[k] * cost[k];
    double dual = 0.0;
    for (std::size_t i = 0; i < m; ++i) dual -= mu.w[i] * pi[i];
    for (std::size_t j = 0; j < n; ++j) dual += nu.w[j] * pi[m + j];
    if (std::abs(primal - dual) > 1e-9)
        throw NumericalError("exact distance: duality gap " +
                             std::to_string(primal - dual) + " exceeds 1e-9");
    return primal;
}

SlicedW1 sliced_w1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n_proj,
                   std::uint64_t seed) {
    check_measure(mu, "sliced distance");
    check_measure(nu, "sliced distance");
    if (n_proj < 1) throw ConfigError("sliced distance: need at least one direction");

    const CounterStream dirs(seed, 0);
    std::vector<std::pair<double, double>> pa(mu.size()), pb(nu.size());
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < n_proj; ++k) {
        const double th =
            2.0 * std::numbers::pi *
            dirs.uniform(static_cast<std::uint64_t>(k), CounterStream::kProjection);
        const double c = std::cos(th), s = std::sin(th);
        for (std::size_t q = 0; q < mu.size(); ++q)
            pa[q] = {mu.x[q] * c + mu.y[q] * s, mu.w[q]};
        for (std::size_t q = 0; q < nu.size(); ++q)
            pb[q] = {nu.x[q] * c + nu.y[q] * s, nu.w[q]};
        const double v = w1_1d_weighted(pa, pb);
        sum += v;
        sumsq += v * v;
    }
    SlicedW1 out;
    out.value = sum / n_proj;
    const double var =
        n_proj > 1 ? std::max(0.0, (sumsq - sum * sum / n_proj) / (n_proj - 1)) : 0.0;
    out.std_error = std::sqrt(var / n_proj);
    return out;
}

}  // namespace mot::transport
