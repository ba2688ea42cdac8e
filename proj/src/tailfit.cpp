#include "egowords/tailfit.hpp"

#include "egowords/error.hpp"
#include "egowords/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace egowords {

namespace {

void check_values(std::span<const double> values, std::size_t min_values) {
    if (values.size() < min_values)
        throw InsufficientDataError("fit-tail", "power-law fit needs at least " + std::to_string(min_values) +
                                                    " values, got " + std::to_string(values.size()));
    for (double v : values)
        if (!(v > 0) || !std::isfinite(v)) throw ArgumentError("fit-tail", "power-law fit needs positive finite values");
}

// Sorted sample with logs and suffix sums of logs, shared by every candidate
// cutoff of one fit.
struct SortedSample {
    std::vector<double> x;
    std::vector<double> lx;
    std::vector<long double> suffix; // suffix[i] = sum of lx[i..n)
    std::vector<std::size_t> group_end; // end index of the run of equal values starting at i

    explicit SortedSample(std::span<const double> values) : x(values.begin(), values.end()) {
        std::sort(x.begin(), x.end());
        const std::size_t n = x.size();
        lx.resize(n);
        for (std::size_t i = 0; i < n; ++i) lx[i] = std::log(x[i]);
        suffix.assign(n + 1, 0.0L);
        for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + lx[i];
        group_end.resize(n);
        for (std::size_t i = n; i-- > 0;)
            group_end[i] = (i + 1 < n && x[i + 1] == x[i]) ? group_end[i + 1] : i + 1;
    }

    std::size_t size() const { return x.size(); }

    // Alpha for the tail starting at index i; NaN when undefined.
    double alpha_at(std::size_t i) const {
        const std::size_t n_tail = size() - i;
        const long double denom = suffix[i] - static_cast<long double>(n_tail) * lx[i];
        if (n_tail < 2 || !(denom > 0)) return std::numeric_limits<double>::quiet_NaN();
        return 1.0 + static_cast<double>(static_cast<long double>(n_tail) / denom);
    }

    double ks_at(std::size_t i, double alpha) const {
        const auto n_tail = static_cast<double>(size() - i);
        const double base = lx[i];
        double d = 0.0;
        for (std::size_t j = i; j < size(); j = group_end[j]) {
            const double model = 1.0 - std::exp((1.0 - alpha) * (lx[j] - base));
            const double below = static_cast<double>(j - i) / n_tail;
            const double upto = static_cast<double>(group_end[j] - i) / n_tail;
            d = std::max({d, std::fabs(model - below), std::fabs(upto - model)});
        }
        return d;
    }
};

TailFit fit_sorted(const SortedSample& s, const TailFitConfig& config, Execution execution) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < s.size() && starts.size() < config.max_candidates; i = s.group_end[i])
        if (s.size() - i >= 2) starts.push_back(i);

    std::vector<double> alpha(starts.size()), ks(starts.size());
    auto eval = [&](std::size_t c) {
        alpha[c] = s.alpha_at(starts[c]);
        ks[c] = std::isnan(alpha[c]) ? std::numeric_limits<double>::infinity() : s.ks_at(starts[c], alpha[c]);
    };
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(starts.size()); ++c) eval(static_cast<std::size_t>(c));
    } else {
        for (std::size_t c = 0; c < starts.size(); ++c) eval(c);
    }

    std::size_t best = starts.size();
    for (std::size_t c = 0; c < starts.size(); ++c)
        if (std::isfinite(ks[c]) && (best == starts.size() || ks[c] < ks[best])) best = c;
    if (best == starts.size()) throw DegenerateInputError("fit-tail", "no admissible cutoff; values are degenerate");

    TailFit fit;
    fit.alpha = alpha[best];
    fit.xmin = s.x[starts[best]];
    fit.ks_distance = ks[best];
    fit.n_tail = s.size() - starts[best];
    return fit;
}

} // namespace

double powerlaw_alpha_mle(std::span<const double> values, double xmin) {
    if (!(xmin > 0)) throw ArgumentError("fit-tail", "xmin must be positive");
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values)
        if (v >= xmin) {
            sum += std::log(v / xmin);
            ++n;
        }
    if (n < 2 || !(sum > 0)) throw DegenerateInputError("fit-tail", "tail above xmin is degenerate");
    return 1.0 + static_cast<double>(n) / sum;
}

double powerlaw_ks_distance(std::span<const double> values, double xmin, double alpha) {
    std::vector<double> tail;
    for (double v : values)
        if (v >= xmin) tail.push_back(v);
    if (tail.empty()) throw DegenerateInputError("fit-tail", "empty tail");
    const SortedSample s(tail);
    // Recompute against the requested cutoff rather than the smallest tail value.
    const auto n_tail = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t j = 0; j < s.size(); j = s.group_end[j]) {
        const double model = 1.0 - std::pow(s.x[j] / xmin, 1.0 - alpha);
        d = std::max({d, std::fabs(model - static_cast<double>(j) / n_tail),
                      std::fabs(static_cast<double>(s.group_end[j]) / n_tail - model)});
    }
    return d;
}

TailFit fit_powerlaw_fixed_xmin(std::span<const double> values, double xmin) {
    TailFit fit;
    fit.xmin = xmin;
    fit.alpha = powerlaw_alpha_mle(values, xmin);
    fit.ks_distance = powerlaw_ks_distance(values, xmin, fit.alpha);
    fit.n_tail = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return v >= xmin; }));
    return fit;
}

TailFit fit_powerlaw(std::span<const double> values, const TailFitConfig& config) {
    check_values(values, config.min_values);
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; }))
        throw DegenerateInputError("fit-tail", "all values are equal");
    const SortedSample s(values);
    return fit_sorted(s, config, config.execution);
}

double bootstrap_pvalue(std::span<const double> values, const TailFit& fit, std::size_t n_boot,
                        std::uint64_t seed, const TailFitConfig& config) {
    if (n_boot == 0) throw ArgumentError("fit-tail", "bootstrap needs at least one replicate");
    check_values(values, config.min_values);
    std::vector<double> below;
    for (double v : values)
        if (v < fit.xmin) below.push_back(v);
    std::sort(below.begin(), below.end());
    const std::size_t n = values.size();
    const double p_tail = static_cast<double>(n - below.size()) / static_cast<double>(n);

    std::vector<char> at_least(n_boot, 0);
    auto replicate = [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        std::vector<double> sample(n);
        for (auto& v : sample) {
            if (below.empty() || rng.uniform() < p_tail)
                v = fit.xmin * std::pow(1.0 - rng.uniform(), -1.0 / (fit.alpha - 1.0));
            else
                v = below[rng.below(below.size())];
        }
        TailFitConfig inner = config;
        inner.execution = Execution::Serial;
        try {
            const auto refit = fit_powerlaw(sample, inner);
            at_least[r] = refit.ks_distance >= fit.ks_distance;
        } catch (const DegenerateInputError&) {
            at_least[r] = 1; // an unfittable replicate never counts against the model
        }
    };
    if (config.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n_boot); ++r) replicate(static_cast<std::size_t>(r));
    } else {
        for (std::size_t r = 0; r < n_boot; ++r) replicate(r);
    }
    std::size_t count = 0;
    for (char c : at_least) count += c != 0;
    return static_cast<double>(count) / static_cast<double>(n_boot);
}

RejectionFractions rejection_table(std::span<const double> p_values) {
    if (p_values.empty()) throw ArgumentError("fit-tail", "rejection table of no users");
    RejectionFractions r;
    r.n = p_values.size();
    for (double p : p_values) {
        r.below_010 += p < 0.10;
        r.below_005 += p < 0.05;
        r.below_001 += p < 0.01;
    }
    const auto n = static_cast<double>(r.n);
    r.below_010 /= n;
    r.below_005 /= n;
    r.below_001 /= n;
    return r;
}

} // namespace egowords
