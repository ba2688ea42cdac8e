#pragma once

#include "egowords/clustering.hpp"
#include "egowords/frequency.hpp"

#include <span>
#include <string>
#include <vector>

namespace egowords {

struct EgoNetworkOfWords {
    std::string user_id;
    std::vector<std::size_t> cluster_sizes; // by descending mode frequency
    std::vector<std::size_t> layer_sizes;   // prefix sums of cluster_sizes
    std::vector<double> scaling_ratios;     // layer_sizes[i+1] / layer_sizes[i]

    std::size_t layer_count() const { return layer_sizes.size(); }
};

EgoNetworkOfWords build_layers(const ClusterModel& model, std::string user_id = {});

EgoNetworkOfWords layers_from_cluster_sizes(std::vector<std::size_t> cluster_sizes,
                                            std::string user_id = {});

std::vector<double> scaling_ratios(std::span<const std::size_t> layer_sizes);

// Inverse of the prefix sum.
std::vector<std::size_t> cluster_sizes_from_layers(std::span<const std::size_t> layer_sizes);

// Indices into `networks` of users whose layer count equals the modal one.
std::vector<std::size_t> modal_cohort(std::span<const EgoNetworkOfWords> networks);

enum class RegressionKind { Intercept, ThroughOrigin };

struct RegressionResult {
    std::size_t layer_rank = 0; // 1-based
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_users = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of y on x.
LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y,
                                 RegressionKind kind = RegressionKind::Intercept);

// Regresses every layer size on the outermost layer size across a cohort
// whose members share one layer count.
std::vector<RegressionResult> layer_size_regression(std::span<const EgoNetworkOfWords> cohort,
                                                    RegressionKind kind = RegressionKind::Intercept);

struct LayerSummary {
    std::size_t layer_rank = 0; // 1-based
    CiAggregate size;
    std::optional<CiAggregate> ratio; // ratio of layer rank+1 over rank; absent for the last
};

std::vector<LayerSummary> cohort_layer_summary(std::span<const EgoNetworkOfWords> cohort);

} // namespace egowords
