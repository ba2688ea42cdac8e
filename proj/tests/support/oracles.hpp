// Independent reference computations used by the unit and acceptance tests.
#pragma once

#include "egowords/layers.hpp"
#include "egowords/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

// k-th nearest other point by sorting every distance row.
inline double bandwidth(const std::vector<double>& x, double quantile) {
    const std::size_t n = x.size();
    std::size_t k = static_cast<std::size_t>(std::floor(quantile * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) d.push_back(std::fabs(x[i] - x[j]));
        std::sort(d.begin(), d.end());
        sum += d[k - 1];
    }
    return sum / static_cast<double>(n);
}

// Density whose gradient ascent the flat-kernel shift follows.
inline double shadow_density(const std::vector<double>& x, double h, double at) {
    double f = 0.0;
    for (double v : x) {
        const double d = at - v;
        if (d * d < h * h) f += h * h - d * d;
    }
    return f;
}

inline double window_mean(const std::vector<double>& x, double h, double at) {
    double s = 0.0;
    std::size_t c = 0;
    for (double v : x)
        if (std::fabs(v - at) <= h) {
            s += v;
            ++c;
        }
    return s / static_cast<double>(c);
}

struct Clusters {
    std::vector<double> modes;              // descending
    std::vector<std::size_t> labels;
    std::vector<std::size_t> member_counts;
};

// Grid evaluation of the shadow density, discrete hill climbing from every
// point, refinement of each grid peak to its exact window-mean fixed point,
// then the documented merge and nearest-mode assignment.
inline Clusters grid_mean_shift(const std::vector<double>& x, double h, std::size_t cells_per_bandwidth = 4000) {
    const double lo = *std::min_element(x.begin(), x.end());
    const double hi = *std::max_element(x.begin(), x.end());
    const double step = h / static_cast<double>(cells_per_bandwidth);
    // Uniform grid plus every point and window edge, so dips narrower than a
    // cell are still resolved.
    std::vector<double> grid;
    for (double at = lo; at < hi; at += step) grid.push_back(at);
    for (double v : x) {
        grid.push_back(v);
        if (v - h >= lo) grid.push_back(v - h);
        if (v + h <= hi) grid.push_back(v + h);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // Between consecutive edges the density is one parabola; its vertex is
    // the window mean, added when it falls inside the piece.
    std::vector<double> edges;
    for (double v : x) {
        edges.push_back(v - h);
        edges.push_back(v + h);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double mid = 0.5 * (edges[e] + edges[e + 1]);
        bool any = false;
        for (double v : x) any = any || std::fabs(v - mid) <= h;
        if (!any) continue;
        const double m = window_mean(x, h, mid);
        if (m > edges[e] && m < edges[e + 1] && m >= lo && m <= hi) grid.push_back(m);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t cells = grid.size();
    std::vector<double> f(cells);
    for (std::size_t g = 0; g < cells; ++g) f[g] = shadow_density(x, h, grid[g]);

    std::vector<double> peaks;
    for (double v : x) {
        auto g = static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), v) - grid.begin());
        for (;;) {
            const double left = g > 0 ? f[g - 1] : -1.0;
            const double right = g + 1 < cells ? f[g + 1] : -1.0;
            if (right > f[g] && right >= left) ++g;
            else if (left > f[g]) --g;
            else break;
        }
        double p = grid[g];
        for (int it = 0; it < 1000; ++it) {
            const double next = window_mean(x, h, p);
            if (next == p) break;
            p = next;
        }
        peaks.push_back(p);
    }

    auto support = [&](double p) {
        std::size_t c = 0;
        for (double v : x) c += std::fabs(v - p) <= h;
        return c;
    };
    std::vector<double> kept;
    std::vector<bool> used(peaks.size(), false);
    for (;;) {
        std::size_t best = peaks.size();
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            if (used[i]) continue;
            if (best == peaks.size() || support(peaks[i]) > support(peaks[best]) ||
                (support(peaks[i]) == support(peaks[best]) && peaks[i] < peaks[best]))
                best = i;
        }
        if (best == peaks.size()) break;
        used[best] = true;
        bool near = false;
        for (double m : kept) near = near || std::fabs(m - peaks[best]) <= h;
        if (!near) kept.push_back(peaks[best]);
    }
    std::sort(kept.begin(), kept.end(), std::greater<>());

    std::vector<std::size_t> raw(x.size());
    std::vector<std::size_t> count(kept.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t b = 0;
        for (std::size_t m = 1; m < kept.size(); ++m)
            if (std::fabs(x[i] - kept[m]) < std::fabs(x[i] - kept[b])) b = m;
        raw[i] = b;
        ++count[b];
    }
    Clusters out;
    std::vector<std::size_t> remap(kept.size());
    for (std::size_t m = 0; m < kept.size(); ++m) {
        if (count[m] == 0) continue;
        remap[m] = out.modes.size();
        out.modes.push_back(kept[m]);
        out.member_counts.push_back(count[m]);
    }
    for (auto r : raw) out.labels.push_back(remap[r]);
    return out;
}

// Random 1D instance: a few Gaussian groups, optionally quantized the way
// log10 of small integer counts is.
inline std::vector<double> random_instance(egowords::Rng& rng, std::size_t max_n = 20) {
    const std::size_t n = 2 + rng.below(max_n - 1);
    const std::size_t groups = 1 + rng.below(4);
    std::vector<double> centers;
    for (std::size_t g = 0; g < groups; ++g) centers.push_back(5.0 * rng.uniform());
    const double sd = 0.05 + 0.5 * rng.uniform();
    const bool quantized = rng.below(3) == 0;
    std::vector<double> x;
    while (x.size() < n) {
        double v = centers[rng.below(groups)] + sd * rng.normal();
        if (quantized) v = std::log10(std::max(2.0, std::round(std::pow(10.0, std::clamp(v, 0.0, 4.0)))));
        x.push_back(v);
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) x.back() += 0.5;
    // Heavy ties can leave every k-th neighbour at distance zero.
    if (bandwidth(x, 0.3) == 0.0) x.back() = x.front() + 1.0;
    return x;
}

// Textbook two-pass least squares.
inline egowords::LinearFit ols(const std::vector<double>& x, const std::vector<double>& y,
                               egowords::RegressionKind kind) {
    const double n = static_cast<double>(x.size());
    egowords::LinearFit fit;
    double my = 0.0;
    for (double v : y) my += v;
    my /= n;
    // Without an intercept the total sum of squares is uncentered.
    const double centre = kind == egowords::RegressionKind::Intercept ? my : 0.0;
    double sst = 0.0;
    for (double v : y) sst += (v - centre) * (v - centre);
    if (kind == egowords::RegressionKind::Intercept) {
        double mx = 0.0;
        for (double v : x) mx += v;
        mx /= n;
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
        }
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
    } else {
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += x[i] * y[i];
            sxx += x[i] * x[i];
        }
        fit.slope = sxy / sxx;
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    fit.r_squared = sst > 0 ? 1.0 - sse / sst : 1.0;
    return fit;
}

} // namespace oracle
