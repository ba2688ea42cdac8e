#pragma once

#include "egowords/frequency.hpp"
#include "egowords/parallel.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace egowords {

struct MeanShiftConfig {
    double quantile = 0.3;
    double tolerance = 1e-7;
    int max_iterations = 500;
    std::optional<double> bandwidth; // overrides the estimate when set
    Execution execution = Execution::Parallel;

    void validate() const;
};

// Result of flat-kernel Mean Shift on one user's values.
struct ClusterModel {
    double bandwidth = 0.0;
    std::vector<double> modes;              // strictly descending
    std::vector<std::size_t> member_counts; // per mode
    std::vector<std::size_t> labels;        // per input value, index into modes
    std::map<std::string, std::size_t> assignments; // lemma -> index into modes (cluster_user only)
    int iterations_used = 0;

    std::size_t cluster_count() const { return modes.size(); }
};

// Mean over points of the distance to their k-th nearest other point, with
// k = max(1, floor(quantile * n)).
double estimate_bandwidth(std::span<const double> values, double quantile,
                          Execution execution = Execution::Parallel);

// Every value seeds a trajectory that is replaced by the mean of all values
// within `bandwidth` until it moves less than the tolerance. Converged
// positions closer than or equal to one bandwidth are merged, keeping the one
// with more support (ties to the lower value); each value then joins its
// nearest mode (ties to the higher one) and modes without members are dropped.
ClusterModel mean_shift_1d(std::span<const double> values, const MeanShiftConfig& config);

ClusterModel cluster_user(const FrequencyTable& table, const MeanShiftConfig& config);

struct ClusterHistogram {
    std::map<std::size_t, std::size_t> users_by_count;
    std::size_t modal_count = 0; // ties -> smaller count
};

ClusterHistogram cluster_count_histogram(std::span<const ClusterModel> models);

// (user_id, bandwidth, mode_rank, mode_value, member_count, iterations); ranks are 1-based
void write_cluster_models(std::ostream& out, std::span<const std::string> users,
                          std::span<const ClusterModel> models);
// (user_id, lemma, cluster_rank), 1-based
void write_assignments(std::ostream& out, std::span<const std::string> users,
                       std::span<const ClusterModel> models);

struct UserClusters {
    std::string user_id;
    ClusterModel model;
};
// Rebuilds models from a clusters file and an assignments file. Labels are
// left empty; assignments are restored.
std::vector<UserClusters> read_cluster_models(std::istream& clusters, std::istream& assignments,
                                              const std::string& source);

} // namespace egowords
