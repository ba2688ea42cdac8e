// egowords: command-line front end for the ego-network-of-words pipeline.

#include "egowords/csv.hpp"
#include "egowords/error.hpp"
#include "egowords/parallel.hpp"
#include "egowords/pipeline.hpp"
#include "egowords/rng.hpp"
#include "egowords/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace egowords;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("io", "cannot write " + path.string());
    return out;
}

fs::path require(const fs::path& path, const std::string& stage) {
    if (!fs::exists(path))
        throw DependencyError(stage, "missing " + path.string() + "; run the " + stage + " stage first");
    return path;
}

struct SimulateOptions {
    std::string kind = "planted";
    std::size_t users = 10;
    std::size_t k = 4;
    double separation = 1.0;
    double jitter = 0.08;
    std::size_t base_words = 5;
    double lowest_center = 1.0;
    std::size_t vocab = 1000;
    double exponent = 1.0;
    std::uint64_t tokens = 100000;
    double alpha = 2.5;
    double xmin = 1.0;
    std::size_t n = 10000;
    Seconds download_time = 1700000000;
};

void simulate(const SimulateOptions& o, const PipelineConfig& config, const fs::path& out_dir) {
    const double T = config.window.window_years;
    if (o.kind == "pareto") {
        auto out = open_out(out_dir / "samples.csv");
        csv::write_row(out, {"value"});
        for (double v : generate_power_law_samples(o.alpha, o.xmin, o.n, config.seed))
            csv::write_row(out, {csv::format_double(v)});
        return;
    }
    std::vector<FrequencyTable> tables;
    std::vector<PlantedUser> planted;
    for (std::size_t u = 0; u < o.users; ++u) {
        const auto seed = derive_seed(config.seed, u);
        char id[32];
        std::snprintf(id, sizeof id, "%s%05zu", o.kind == "planted" ? "planted" : "zipf", u);
        if (o.kind == "planted") {
            Rng rng(seed);
            const auto base = o.base_words + rng.below(o.base_words + 1);
            auto spec = make_planted_spec(o.k, o.separation, o.jitter, seed, base, o.lowest_center, T);
            planted.push_back(generate_planted_user(spec, id));
            tables.push_back(planted.back().table);
        } else {
            tables.push_back(generate_zipf_user(o.vocab, o.exponent, o.tokens, T, seed, id));
        }
    }
    std::vector<LemmaCounts> counts;
    for (const auto& t : tables) counts.push_back(LemmaCounts{t.user_id, t.counts, 0, {}});
    {
        auto out = open_out(out_dir / artifacts::kLemmaCounts);
        write_lemma_counts(out, counts);
    }
    {
        auto out = open_out(out_dir / artifacts::kFrequencies);
        write_frequency_tables(out, tables);
    }
    {
        auto out = open_out(out_dir / "corpus.jsonl");
        write_timelines(out, counts_to_timelines(tables, o.download_time, config.seed, 20, "synthetic-" + o.kind));
    }
    if (!planted.empty()) {
        auto out = open_out(out_dir / "truth.csv");
        write_truth(out, planted);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ego networks of words: corpus ingestion, frequency layering and tail fitting"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file mirroring the command-line flags");

    PipelineConfig config;
    fs::path out_dir = ".";
    std::string input;
    std::string regression = "intercept";
    std::optional<double> bandwidth;

    app.add_option("--jobs", config.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", config.seed, "Base seed for all randomized steps");
    app.add_option("--out-dir", out_dir, "Directory for artifacts");
    app.add_option("--input", input, "Input corpus (line-delimited JSON)");

    app.add_option("--window-years", config.window.window_years, "Observation window T in years");
    app.add_option("--abandon-months", config.abandon_months, "Abandonment threshold in months");
    app.add_option("--sporadic-frac", config.window.sporadic_fraction, "Empty-month fraction marking sporadic users");
    app.add_option("--api-cap", config.window.api_cap, "Timeline length at which truncation is checked");
    app.add_option("--lang", config.language, "Language tag to keep");
    app.add_option("--reference-time", config.reference_time, "Reference time (epoch seconds) instead of download time");
    app.add_option("--stopwords", config.stopwords, "Stop-word list: builtin or a file path");
    app.add_option("--lemmatizer", config.lemmatizer, "Lemmatizer id")->check(CLI::IsMember(std::vector<std::string>{"builtin", std::string(kBuiltinLemmatizerId)}));
    app.add_option("--min-count", config.min_count, "Minimum occurrences per lemma");
    app.add_option("--quantile", config.mean_shift.quantile, "Bandwidth nearest-neighbour quantile");
    app.add_option("--bandwidth", bandwidth, "Fixed Mean Shift bandwidth");
    app.add_option("--tol", config.mean_shift.tolerance, "Mean Shift convergence tolerance");
    app.add_option("--max-iter", config.mean_shift.max_iterations, "Mean Shift iteration cap");
    app.add_option("--regression", regression, "Layer regression model")->check(CLI::IsMember({"intercept", "through-origin"}));
    app.add_option("--boot", config.n_boot, "Bootstrap replicates for the tail p-value");
    app.add_flag("--skip-cluster", config.skip_cluster, "run: stop before clustering");
    app.add_flag("--skip-tail", config.skip_tail, "run: skip the tail fit");

    auto* ingest = app.add_subcommand("ingest", "Parse, classify, filter and window a corpus");
    auto* extract = app.add_subcommand("extract", "Tokenize and lemmatize the windowed timelines");
    auto* freq = app.add_subcommand("freq", "Per-user word frequencies");
    auto* cluster = app.add_subcommand("cluster", "Mean Shift clustering of log frequencies");
    auto* layers = app.add_subcommand("layers", "Ego-network layers from clusters");
    auto* fit_tail = app.add_subcommand("fit-tail", "Power-law tail fit with bootstrap p-value");
    auto* report = app.add_subcommand("report", "Emit figure and table data from existing artifacts");
    auto* run = app.add_subcommand("run", "Full pipeline from corpus to figure data");
    auto* sim = app.add_subcommand("simulate", "Synthetic corpora with ground truth");

    SimulateOptions so;
    sim->add_option("kind", so.kind, "planted, zipf or pareto")->check(CLI::IsMember({"planted", "zipf", "pareto"}))->required();
    sim->add_option("--users", so.users, "Synthetic users");
    sim->add_option("--k", so.k, "Planted modes");
    sim->add_option("--separation", so.separation, "Planted mode spacing (log10)");
    sim->add_option("--jitter", so.jitter, "Planted log10 jitter sd");
    sim->add_option("--base-words", so.base_words, "Words in the innermost planted mode");
    sim->add_option("--lowest-center", so.lowest_center, "log10 frequency of the outermost mode");
    sim->add_option("--vocab", so.vocab, "Zipf vocabulary size");
    sim->add_option("--exponent", so.exponent, "Zipf exponent");
    sim->add_option("--tokens", so.tokens, "Zipf tokens per user");
    sim->add_option("--alpha", so.alpha, "Pareto exponent");
    sim->add_option("--xmin", so.xmin, "Pareto lower bound");
    sim->add_option("--n", so.n, "Pareto sample size");
    sim->add_option("--download-time", so.download_time, "Download time stamped on the synthetic corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        config.regression = regression == "intercept" ? RegressionKind::Intercept : RegressionKind::ThroughOrigin;
        if (config.lemmatizer == "builtin") config.lemmatizer = std::string(kBuiltinLemmatizerId);
        config.mean_shift.bandwidth = bandwidth;
        set_jobs(config.jobs);
        fs::create_directories(out_dir);
        auto need_input = [&](const std::string& stage) {
            if (input.empty()) throw ArgumentError(stage, "--input is required");
            return fs::path(input);
        };

        if (run->parsed()) {
            const auto m = run_pipeline(need_input("run"), config, out_dir);
            std::cerr << "egowords: " << m.stage_counts.at("users_kept") << " users analysed, artifacts in "
                      << out_dir.string() << '\n';
        } else if (ingest->parsed()) {
            const auto parsed = parse_timeline_file(need_input("ingest").string());
            auto result = run_ingest(parsed, config);
            auto out = open_out(out_dir / artifacts::kTimelines);
            write_timelines(out, result.kept);
            write_users(out_dir, result.users);
            if (result.kept.empty()) throw EmptyCorpusError("ingest", "empty corpus: no timeline survived filtering and windowing");
        } else if (extract->parsed()) {
            const auto src = input.empty() ? require(out_dir / artifacts::kTimelines, "ingest") : fs::path(input);
            const auto parsed = parse_timeline_file(src.string());
            std::vector<UserRecord> users;
            for (const auto& t : parsed.timelines) users.push_back({t.user_id, t.source_label, ActivityStatus::Active, true, t.documents.size()});
            if (fs::exists(out_dir / artifacts::kUsers)) users = *load_outputs(out_dir, config).users;
            StageCounts counts;
            const auto analyses = run_extract(parsed.timelines, users, config, counts);
            write_extraction(out_dir, analyses);
        } else if (freq->parsed()) {
            std::ifstream in(require(input.empty() ? out_dir / artifacts::kLemmaCounts : fs::path(input), "extract"));
            std::vector<FrequencyTable> tables;
            for (const auto& lc : read_lemma_counts(in, artifacts::kLemmaCounts))
                tables.push_back(word_frequencies(lc, config.window.window_years));
            auto out = open_out(out_dir / artifacts::kFrequencies);
            write_frequency_tables(out, tables);
        } else if (cluster->parsed()) {
            require(out_dir / artifacts::kFrequencies, "freq");
            auto outputs = load_outputs(out_dir, config);
            StageCounts counts;
            run_cluster(outputs.analyses, config, counts);
            write_clusters(out_dir, outputs.analyses);
        } else if (layers->parsed()) {
            require(out_dir / artifacts::kClusters, "cluster");
            auto outputs = load_outputs(out_dir, config);
            run_layers(outputs.analyses);
            write_user_layers(out_dir, outputs.analyses);
        } else if (fit_tail->parsed()) {
            require(out_dir / artifacts::kFrequencies, "freq");
            auto outputs = load_outputs(out_dir, config);
            outputs.n_boot = config.n_boot;
            outputs.seed = config.seed;
            StageCounts counts;
            run_tail_fit(outputs.analyses, config, counts);
            write_tail_fits(out_dir, outputs);
        } else if (report->parsed()) {
            const auto outputs = load_outputs(out_dir, config);
            for (const auto& p : emit_figure_data(outputs, out_dir)) std::cout << p.string() << '\n';
        } else if (sim->parsed()) {
            simulate(so, config, out_dir);
        }
    } catch (const Error& e) {
        std::cerr << "egowords: [" << e.stage() << "] " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "egowords: [internal] " << e.what() << '\n';
        return 3;
    }
    return 0;
}
