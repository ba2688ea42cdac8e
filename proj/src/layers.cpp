#include "egowords/layers.hpp"

#include "egowords/error.hpp"

#include <algorithm>
#include <map>

namespace egowords {

EgoNetworkOfWords layers_from_cluster_sizes(std::vector<std::size_t> cluster_sizes, std::string user_id) {
    EgoNetworkOfWords net;
    net.user_id = std::move(user_id);
    std::size_t running = 0;
    for (std::size_t s : cluster_sizes) {
        if (s == 0) throw ArgumentError("layers", "empty cluster");
        running += s;
        net.layer_sizes.push_back(running);
    }
    net.cluster_sizes = std::move(cluster_sizes);
    net.scaling_ratios = scaling_ratios(net.layer_sizes);
    return net;
}

EgoNetworkOfWords build_layers(const ClusterModel& model, std::string user_id) {
    // Modes are already ranked by descending log-frequency.
    return layers_from_cluster_sizes(model.member_counts, std::move(user_id));
}

std::vector<double> scaling_ratios(std::span<const std::size_t> layer_sizes) {
    std::vector<double> out;
    if (!layer_sizes.empty() && layer_sizes[0] == 0) throw ArgumentError("layers", "layer sizes must be positive");
    for (std::size_t i = 1; i < layer_sizes.size(); ++i) {
        if (layer_sizes[i] <= layer_sizes[i - 1])
            throw ArgumentError("layers", "layer sizes must be strictly increasing");
        out.push_back(static_cast<double>(layer_sizes[i]) / static_cast<double>(layer_sizes[i - 1]));
    }
    return out;
}

std::vector<std::size_t> cluster_sizes_from_layers(std::span<const std::size_t> layer_sizes) {
    std::vector<std::size_t> out;
    std::size_t prev = 0;
    for (std::size_t s : layer_sizes) {
        out.push_back(s - prev);
        prev = s;
    }
    return out;
}

std::vector<std::size_t> modal_cohort(std::span<const EgoNetworkOfWords> networks) {
    std::map<std::size_t, std::size_t> hist;
    for (const auto& n : networks) ++hist[n.layer_count()];
    std::size_t modal = 0, best = 0;
    for (const auto& [k, users] : hist)
        if (users > best) {
            best = users;
            modal = k;
        }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < networks.size(); ++i)
        if (networks[i].layer_count() == modal) idx.push_back(i);
    return idx;
}

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y, RegressionKind kind) {
    if (x.size() != y.size()) throw ArgumentError("layers", "regression inputs differ in length");
    if (x.size() < 2) throw ArgumentError("layers", "regression needs at least two points");
    LinearFit fit;
    if (kind == RegressionKind::ThroughOrigin) {
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
            syy += y[i] * y[i];
        }
        if (sxx == 0.0) throw DegenerateInputError("layers", "predictor is identically zero");
        fit.slope = sxy / sxx;
        fit.intercept = 0.0;
        fit.r_squared = syy == 0.0 ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));
        return fit;
    }
    // Streaming co-moment updates.
    double mx = 0.0, my = 0.0, cxx = 0.0, cxy = 0.0, cyy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        mx += dx / n;
        my += dy / n;
        cxx += dx * (x[i] - mx);
        cxy += dx * (y[i] - my);
        cyy += dy * (y[i] - my);
    }
    if (!(cxx > 0.0)) throw DegenerateInputError("layers", "predictor has zero variance");
    fit.slope = cxy / cxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = cyy == 0.0 ? 1.0 : std::min(1.0, (cxy * cxy) / (cxx * cyy));
    return fit;
}

std::vector<RegressionResult> layer_size_regression(std::span<const EgoNetworkOfWords> cohort, RegressionKind kind) {
    if (cohort.size() < 2) throw ArgumentError("layers", "regression needs at least two users");
    const std::size_t k = cohort.front().layer_count();
    if (k == 0) throw ArgumentError("layers", "user without layers");
    for (const auto& n : cohort)
        if (n.layer_count() != k) throw ArgumentError("layers", "cohort users differ in layer count");

    std::vector<double> outer;
    for (const auto& n : cohort) outer.push_back(static_cast<double>(n.layer_sizes.back()));

    std::vector<RegressionResult> out;
    for (std::size_t rank = 1; rank <= k; ++rank) {
        std::vector<double> response;
        for (const auto& n : cohort) response.push_back(static_cast<double>(n.layer_sizes[rank - 1]));
        const auto fit = ordinary_least_squares(outer, response, kind);
        out.push_back({rank, fit.slope, fit.intercept, fit.r_squared, cohort.size()});
    }
    return out;
}

std::vector<LayerSummary> cohort_layer_summary(std::span<const EgoNetworkOfWords> cohort) {
    if (cohort.size() < 2) throw ArgumentError("layers", "layer summary needs at least two users");
    const std::size_t k = cohort.front().layer_count();
    for (const auto& n : cohort)
        if (n.layer_count() != k) throw ArgumentError("layers", "cohort users differ in layer count");
    std::vector<LayerSummary> out;
    for (std::size_t rank = 1; rank <= k; ++rank) {
        LayerSummary s;
        s.layer_rank = rank;
        std::vector<double> sizes, ratios;
        for (const auto& n : cohort) {
            sizes.push_back(static_cast<double>(n.layer_sizes[rank - 1]));
            if (rank < k) ratios.push_back(n.scaling_ratios[rank - 1]);
        }
        s.size = user_ci_aggregate(sizes);
        if (rank < k) s.ratio = user_ci_aggregate(ratios);
        out.push_back(s);
    }
    return out;
}

} // namespace egowords
