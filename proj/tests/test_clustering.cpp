#include "egowords/clustering.hpp"
#include "egowords/error.hpp"
#include "egowords/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace egowords;

namespace {

MeanShiftConfig serial(std::optional<double> bw = std::nullopt) {
    MeanShiftConfig c;
    c.execution = Execution::Serial;
    c.bandwidth = bw;
    return c;
}

} // namespace

TEST_CASE("bandwidth estimator") {
    CHECK(estimate_bandwidth(std::vector<double>{0, 1, 10}, 0.5) == doctest::Approx(11.0 / 3.0));
    for (double q : {0.1, 0.5, 1.0}) CHECK(estimate_bandwidth(std::vector<double>{0, 1}, q) == 1.0);
    Rng rng(3);
    std::vector<double> x(50), scaled(50);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform() * 4;
        scaled[i] = x[i] * 2.0;
    }
    CHECK(estimate_bandwidth(scaled, 0.3) == 2.0 * estimate_bandwidth(x, 0.3));
    CHECK(estimate_bandwidth(x, 0.3) == doctest::Approx(oracle::bandwidth(x, 0.3)).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_bandwidth(std::vector<double>{1, 1}, 0.3), DegenerateInputError);
    CHECK_THROWS_AS(estimate_bandwidth(std::vector<double>{1}, 0.3), ArgumentError);
}

TEST_CASE("mean shift examples") {
    auto m = mean_shift_1d(std::vector<double>{2.5}, serial());
    CHECK(m.modes == std::vector<double>{2.5});

    m = mean_shift_1d(std::vector<double>{0, 0.1, 0.2, 5.0, 5.1, 5.2}, serial(1.0));
    REQUIRE(m.cluster_count() == 2);
    CHECK(m.modes[0] == doctest::Approx(5.1));
    CHECK(m.modes[1] == doctest::Approx(0.1));
    CHECK(m.member_counts == std::vector<std::size_t>{3, 3});
    CHECK(m.labels == std::vector<std::size_t>{1, 1, 1, 0, 0, 0});

    const std::vector<double> close{1.0, 1.2, 1.3, 1.5, 1.9};
    m = mean_shift_1d(close, serial(1.0));
    REQUIRE(m.cluster_count() == 1);
    CHECK(m.modes[0] == doctest::Approx(6.9 / 5.0));
}

TEST_CASE("serial and parallel runs agree bit for bit") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(500 + trial * 37);
        for (auto& v : x) v = 3.0 * std::floor(rng.uniform() * 4) / 3.0 + 0.2 * rng.normal();
        MeanShiftConfig par;
        const auto a = mean_shift_1d(x, serial());
        const auto b = mean_shift_1d(x, par);
        CHECK(a.bandwidth == b.bandwidth);
        CHECK(a.modes == b.modes);
        CHECK(a.labels == b.labels);
        CHECK(estimate_bandwidth(x, 0.3, Execution::Serial) == estimate_bandwidth(x, 0.3, Execution::Parallel));
    }
}

TEST_CASE("matches the grid oracle on small instances") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(derive_seed(2024, i));
        const auto x = oracle::random_instance(rng);
        const auto m = mean_shift_1d(x, serial());
        const auto o = oracle::grid_mean_shift(x, oracle::bandwidth(x, 0.3));
        CAPTURE(i);
        REQUIRE(m.cluster_count() == o.modes.size());
        CHECK(m.labels == o.labels);
        for (std::size_t k = 0; k < o.modes.size(); ++k) CHECK(std::fabs(m.modes[k] - o.modes[k]) <= 1e-6);
    }
}

TEST_CASE("structural properties") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(5 + rng.below(200));
        for (auto& v : x) v = 4.0 * rng.uniform();
        const auto m = mean_shift_1d(x, serial());
        std::size_t total = 0;
        for (std::size_t k = 0; k < m.cluster_count(); ++k) {
            CHECK(m.member_counts[k] > 0);
            total += m.member_counts[k];
            if (k) CHECK(m.modes[k] < m.modes[k - 1]);
            if (k) CHECK(m.modes[k - 1] - m.modes[k] > m.bandwidth);
        }
        CHECK(total == x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t k = 0; k < m.cluster_count(); ++k)
                CHECK(std::fabs(x[i] - m.modes[m.labels[i]]) <= std::fabs(x[i] - m.modes[k]));
    }
}

TEST_CASE("cluster_user") {
    FrequencyTable t;
    t.log_freqs = {{"a", 0.3}, {"b", 0.3}};
    CHECK_THROWS_AS(cluster_user(t, serial()), DegenerateInputError);

    auto spec = make_planted_spec(3, 1.0, 0.0, 1, 3);
    const auto planted = generate_planted_user(spec);
    const auto m = cluster_user(planted.table, serial());
    CHECK(m.cluster_count() == 3);
    for (const auto& [lemma, rank] : planted.true_rank) CHECK(m.assignments.at(lemma) == rank);
}

TEST_CASE("cluster count histogram") {
    auto model = [](std::size_t k) {
        ClusterModel m;
        m.modes.assign(k, 0.0);
        return m;
    };
    std::vector<ClusterModel> a{model(5), model(5), model(6)};
    auto h = cluster_count_histogram(a);
    CHECK(h.users_by_count == std::map<std::size_t, std::size_t>{{5, 2}, {6, 1}});
    CHECK(h.modal_count == 5);
    std::vector<ClusterModel> b{model(4), model(7)};
    CHECK(cluster_count_histogram(b).modal_count == 4);
}

TEST_CASE("cluster files round-trip") {
    auto spec = make_planted_spec(3, 1.0, 0.05, 9);
    const auto planted = generate_planted_user(spec, "p1");
    const auto m = cluster_user(planted.table, serial());
    std::vector<std::string> users{"p1"};
    std::vector<ClusterModel> models{m};
    std::stringstream c, a;
    write_cluster_models(c, users, models);
    write_assignments(a, users, models);
    const auto back = read_cluster_models(c, a, "mem");
    REQUIRE(back.size() == 1);
    CHECK(back[0].model.modes == m.modes);
    CHECK(back[0].model.member_counts == m.member_counts);
    CHECK(back[0].model.assignments == m.assignments);
    CHECK(back[0].model.bandwidth == m.bandwidth);
}

TEST_CASE("config validation") {
    MeanShiftConfig c;
    c.quantile = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.max_iterations = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
