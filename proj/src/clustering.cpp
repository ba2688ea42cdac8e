#include "egowords/clustering.hpp"

#include "egowords/csv.hpp"
#include "egowords/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace egowords {

namespace {

// k-th nearest other point of sorted[i], walking outwards from i.
double kth_neighbor_distance(std::span<const double> sorted, std::size_t i, std::size_t k) {
    std::size_t left = i, right = i + 1; // candidates are left-1 and right
    double d = 0.0;
    for (std::size_t step = 0; step < k; ++step) {
        const bool has_left = left > 0, has_right = right < sorted.size();
        const double dl = has_left ? sorted[i] - sorted[left - 1] : INFINITY;
        const double dr = has_right ? sorted[right] - sorted[i] : INFINITY;
        if (dl <= dr) {
            d = dl;
            --left;
        } else {
            d = dr;
            ++right;
        }
    }
    return d;
}

struct Window {
    std::span<const double> sorted;
    std::vector<long double> prefix; // prefix[i] = sum of sorted[0..i)

    explicit Window(std::span<const double> s) : sorted(s), prefix(s.size() + 1, 0.0L) {
        for (std::size_t i = 0; i < s.size(); ++i) prefix[i + 1] = prefix[i] + s[i];
    }

    std::pair<std::size_t, std::size_t> range(double center, double radius) const {
        // Membership is |v - center| <= radius as computed, not a shifted bound.
        const auto lo = std::partition_point(sorted.begin(), sorted.end(),
                                             [&](double v) { return center - v > radius; });
        const auto hi = std::partition_point(lo, sorted.end(), [&](double v) { return v - center <= radius; });
        return {static_cast<std::size_t>(lo - sorted.begin()), static_cast<std::size_t>(hi - sorted.begin())};
    }

    std::size_t support(double center, double radius) const {
        const auto [l, r] = range(center, radius);
        return r - l;
    }

    double mean(double center, double radius) const {
        const auto [l, r] = range(center, radius);
        return static_cast<double>((prefix[r] - prefix[l]) / static_cast<long double>(r - l));
    }
};

struct Trajectory {
    double position;
    int iterations;
};

Trajectory shift_seed(const Window& w, double seed, double bandwidth, const MeanShiftConfig& cfg) {
    double x = seed;
    int it = 0;
    while (it < cfg.max_iterations) {
        ++it;
        const double next = w.mean(x, bandwidth);
        const double shift = std::fabs(next - x);
        x = next;
        if (shift < cfg.tolerance) break;
    }
    return {x, it};
}

void shift_seeds_serial(const Window& w, std::span<const double> seeds, double bandwidth,
                        const MeanShiftConfig& cfg, std::vector<Trajectory>& out) {
    for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = shift_seed(w, seeds[i], bandwidth, cfg);
}

void shift_seeds_parallel(const Window& w, std::span<const double> seeds, double bandwidth,
                          const MeanShiftConfig& cfg, std::vector<Trajectory>& out) {
    const auto n = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = shift_seed(w, seeds[i], bandwidth, cfg);
}

} // namespace

void MeanShiftConfig::validate() const {
    if (!(quantile > 0 && quantile <= 1)) throw ConfigError("cluster", "quantile must lie in (0, 1]");
    if (!(tolerance > 0)) throw ConfigError("cluster", "tolerance must be positive");
    if (max_iterations < 1) throw ConfigError("cluster", "max iterations must be >= 1");
    if (bandwidth && !(*bandwidth > 0)) throw DegenerateInputError("cluster", "bandwidth must be positive");
}

double estimate_bandwidth(std::span<const double> values, double quantile, Execution execution) {
    if (values.size() < 2) throw ArgumentError("cluster", "bandwidth estimation needs at least two values");
    if (!(quantile > 0 && quantile <= 1)) throw ArgumentError("cluster", "quantile must lie in (0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateInputError("cluster", "all values are equal; bandwidth is zero");

    const std::size_t n = sorted.size();
    auto k = static_cast<std::size_t>(std::floor(quantile * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n - 1);

    std::vector<double> dist(n);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            dist[i] = kth_neighbor_distance(sorted, static_cast<std::size_t>(i), k);
    } else {
        for (std::size_t i = 0; i < n; ++i) dist[i] = kth_neighbor_distance(sorted, i, k);
    }
    double sum = 0.0;
    for (double d : dist) sum += d;
    return sum / static_cast<double>(n);
}

ClusterModel mean_shift_1d(std::span<const double> values, const MeanShiftConfig& config) {
    config.validate();
    if (values.empty()) throw ArgumentError("cluster", "mean shift on an empty set");

    ClusterModel model;
    if (values.size() == 1 && !config.bandwidth) {
        model.bandwidth = 0.0;
        model.modes = {values[0]};
        model.member_counts = {1};
        model.labels = {0};
        return model;
    }
    const double bw = config.bandwidth ? *config.bandwidth
                                       : estimate_bandwidth(values, config.quantile, config.execution);
    if (!(bw > 0) || !std::isfinite(bw)) throw DegenerateInputError("cluster", "degenerate bandwidth");
    model.bandwidth = bw;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const Window window(sorted);

    // Equal seeds follow equal trajectories.
    std::vector<double> seeds = sorted;
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::vector<Trajectory> traj(seeds.size());
    if (config.execution == Execution::Parallel)
        shift_seeds_parallel(window, seeds, bw, config, traj);
    else
        shift_seeds_serial(window, seeds, bw, config, traj);

    struct Candidate {
        double position;
        std::size_t support;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(traj.size());
    for (const auto& t : traj) {
        model.iterations_used = std::max(model.iterations_used, t.iterations);
        candidates.push_back({t.position, window.support(t.position, bw)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.support != b.support) return a.support > b.support;
        return a.position < b.position;
    });
    std::vector<double> modes;
    for (const auto& c : candidates) {
        const bool near = std::any_of(modes.begin(), modes.end(),
                                      [&](double m) { return std::fabs(m - c.position) <= bw; });
        if (!near) modes.push_back(c.position);
    }
    std::sort(modes.begin(), modes.end(), std::greater<>());

    // Nearest mode; ties go to the higher-frequency mode (lower rank).
    auto nearest = [&](double v) {
        std::size_t best = 0;
        double best_d = std::fabs(v - modes[0]);
        for (std::size_t m = 1; m < modes.size(); ++m) {
            const double d = std::fabs(v - modes[m]);
            if (d < best_d) {
                best_d = d;
                best = m;
            }
        }
        return best;
    };
    std::vector<std::size_t> raw(values.size());
    std::vector<std::size_t> members(modes.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        raw[i] = nearest(values[i]);
        ++members[raw[i]];
    }
    std::vector<std::size_t> remap(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
        if (members[m] == 0) continue;
        remap[m] = model.modes.size();
        model.modes.push_back(modes[m]);
        model.member_counts.push_back(members[m]);
    }
    model.labels.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) model.labels[i] = remap[raw[i]];
    return model;
}

ClusterModel cluster_user(const FrequencyTable& table, const MeanShiftConfig& config) {
    const auto values = table.log_values();
    if (values.size() < 2 || std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; }))
        throw DegenerateInputError("cluster", "user " + table.user_id + " has fewer than two distinct frequencies");
    ClusterModel model = mean_shift_1d(values, config);
    std::size_t i = 0;
    for (const auto& entry : table.log_freqs) model.assignments.emplace(entry.first, model.labels[i++]);
    return model;
}

ClusterHistogram cluster_count_histogram(std::span<const ClusterModel> models) {
    ClusterHistogram h;
    for (const auto& m : models) ++h.users_by_count[m.cluster_count()];
    std::size_t best = 0;
    for (const auto& [count, users] : h.users_by_count)
        if (users > best) {
            best = users;
            h.modal_count = count;
        }
    return h;
}

void write_cluster_models(std::ostream& out, std::span<const std::string> users,
                          std::span<const ClusterModel> models) {
    csv::write_row(out, {"user_id", "bandwidth", "mode_rank", "mode_value", "member_count", "iterations"});
    for (std::size_t u = 0; u < models.size(); ++u)
        for (std::size_t m = 0; m < models[u].modes.size(); ++m)
            csv::write_row(out, {users[u], csv::format_double(models[u].bandwidth), std::to_string(m + 1),
                                 csv::format_double(models[u].modes[m]),
                                 std::to_string(models[u].member_counts[m]),
                                 std::to_string(models[u].iterations_used)});
}

void write_assignments(std::ostream& out, std::span<const std::string> users,
                       std::span<const ClusterModel> models) {
    csv::write_row(out, {"user_id", "lemma", "cluster_rank"});
    for (std::size_t u = 0; u < models.size(); ++u)
        for (const auto& [lemma, rank] : models[u].assignments)
            csv::write_row(out, {users[u], lemma, std::to_string(rank + 1)});
}

std::vector<UserClusters> read_cluster_models(std::istream& clusters, std::istream& assignments,
                                              const std::string& source) {
    const auto ct = csv::read(clusters, source + " (clusters)");
    const auto cu = ct.column("user_id"), cb = ct.column("bandwidth"), cr = ct.column("mode_rank"),
               cv = ct.column("mode_value"), cm = ct.column("member_count"), ci = ct.column("iterations");
    std::map<std::string, ClusterModel> by_user;
    auto num = [&](const std::string& s) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size())
            throw InputError("cluster", source + ": bad number '" + s + "'");
        return v;
    };
    for (const auto& row : ct.rows) {
        auto& m = by_user[row[cu]];
        const auto rank = std::stoul(row[cr]);
        if (rank != m.modes.size() + 1) throw InputError("cluster", source + ": mode ranks out of order");
        m.bandwidth = num(row[cb]);
        m.modes.push_back(num(row[cv]));
        m.member_counts.push_back(std::stoul(row[cm]));
        m.iterations_used = std::stoi(row[ci]);
    }
    const auto at = csv::read(assignments, source + " (assignments)");
    const auto au = at.column("user_id"), al = at.column("lemma"), ar = at.column("cluster_rank");
    for (const auto& row : at.rows) {
        auto it = by_user.find(row[au]);
        if (it == by_user.end()) throw InputError("cluster", source + ": assignment for unknown user " + row[au]);
        const auto rank = std::stoul(row[ar]);
        if (rank < 1 || rank > it->second.modes.size())
            throw InputError("cluster", source + ": cluster rank out of range for user " + row[au]);
        it->second.assignments[row[al]] = rank - 1;
    }
    std::vector<UserClusters> out;
    for (auto& [u, m] : by_user) out.push_back({u, std::move(m)});
    return out;
}

} // namespace egowords
