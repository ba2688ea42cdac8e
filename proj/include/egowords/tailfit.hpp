#pragma once

#include "egowords/parallel.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace egowords {

struct TailFit {
    double alpha = 0.0;
    double xmin = 0.0;
    double ks_distance = 0.0;
    std::size_t n_tail = 0;
    std::optional<double> p_value;
};

struct TailFitConfig {
    std::size_t max_candidates = 1000; // smallest distinct values tried as xmin
    std::size_t min_values = 10;
    Execution execution = Execution::Parallel;
};

// Continuous maximum-likelihood exponent for the values >= xmin.
double powerlaw_alpha_mle(std::span<const double> values, double xmin);

// Kolmogorov-Smirnov distance between the empirical distribution of the
// values >= xmin and the continuous power law with the given exponent.
double powerlaw_ks_distance(std::span<const double> values, double xmin, double alpha);

// Fits with a fixed lower cutoff.
TailFit fit_powerlaw_fixed_xmin(std::span<const double> values, double xmin);

// Scans candidate cutoffs and keeps the one minimizing the KS distance.
TailFit fit_powerlaw(std::span<const double> values, const TailFitConfig& config = {});

// Semi-parametric bootstrap goodness-of-fit p-value. Replicate i draws from
// its own stream derived from (seed, i), so serial and parallel runs agree.
double bootstrap_pvalue(std::span<const double> values, const TailFit& fit, std::size_t n_boot,
                        std::uint64_t seed, const TailFitConfig& config = {});

struct RejectionFractions {
    double below_010 = 0.0;
    double below_005 = 0.0;
    double below_001 = 0.0;
    std::size_t n = 0;
};

RejectionFractions rejection_table(std::span<const double> p_values);

} // namespace egowords
