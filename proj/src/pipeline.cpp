#include "egowords/pipeline.hpp"

#include "egowords/csv.hpp"
#include "egowords/error.hpp"
#include "egowords/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace egowords {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("io", "cannot write " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path, const std::string& stage) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DependencyError(stage, "missing artifact " + path.string() + " (run the " + stage + " stage)");
    return in;
}

std::string fmt(double v) { return csv::format_double(v); }

double parse_num(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw InputError("io", what + ": bad number '" + s + "'");
    return v;
}

std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::uint64_t user_stream(const std::string& user_id) { return fnv1a64(user_id); }

std::string_view regression_name(RegressionKind k) {
    return k == RegressionKind::Intercept ? "intercept" : "through-origin";
}

// Users grouped by dataset label, preserving user order.
std::map<std::string, std::vector<const UserAnalysis*>> by_dataset(const std::vector<UserAnalysis>& analyses) {
    std::map<std::string, std::vector<const UserAnalysis*>> groups;
    for (const auto& a : analyses) groups[a.source_label].push_back(&a);
    return groups;
}

void write_ci_row(std::ostream& out, const std::string& label, std::span<const double> values) {
    if (values.empty()) return;
    if (values.size() < 2) {
        csv::write_row(out, {label, fmt(values[0]), "", "", "1"});
        return;
    }
    const auto ci = user_ci_aggregate(values);
    csv::write_row(out, {label, fmt(ci.mean), fmt(ci.ci_low), fmt(ci.ci_high), std::to_string(ci.n)});
}

} // namespace

ExtractionConfig PipelineConfig::extraction() const {
    ExtractionConfig c;
    c.stopwords = StopwordList::resolve(stopwords);
    c.lemmatizer_id = lemmatizer;
    c.min_count = min_count;
    c.validate();
    return c;
}

std::map<std::string, std::string> PipelineConfig::snapshot() const {
    std::map<std::string, std::string> m;
    m["window-years"] = fmt(window.window_years);
    m["abandon-months"] = fmt(abandon_months);
    m["sporadic-frac"] = fmt(window.sporadic_fraction);
    m["api-cap"] = std::to_string(window.api_cap);
    m["lang"] = language;
    m["reference-time"] = reference_time ? std::to_string(*reference_time) : "";
    m["stopwords"] = stopwords;
    m["lemmatizer"] = lemmatizer;
    m["min-count"] = std::to_string(min_count);
    m["quantile"] = fmt(mean_shift.quantile);
    m["tol"] = fmt(mean_shift.tolerance);
    m["max-iter"] = std::to_string(mean_shift.max_iterations);
    m["bandwidth"] = mean_shift.bandwidth ? fmt(*mean_shift.bandwidth) : "";
    m["regression"] = std::string(regression_name(regression));
    m["boot"] = std::to_string(n_boot);
    m["seed"] = std::to_string(seed);
    m["rng"] = std::string(kRngAlgorithm);
    m["skip-cluster"] = skip_cluster ? "true" : "false";
    m["skip-tail"] = skip_tail ? "true" : "false";
    return m;
}

// ---------------------------------------------------------------- stages

IngestOutput run_ingest(const ParseResult& parsed, const PipelineConfig& config) {
    WindowConfig window = config.window;
    window.abandonment_days = months_to_days(config.abandon_months);
    window.validate();
    IngestOutput out;
    auto& c = out.counts;
    c["records"] = parsed.records;
    c["records_skipped"] = parsed.skipped;
    c["users_in"] = parsed.timelines.size();
    for (const char* k : {"documents_in", "documents_removed_retweet", "documents_removed_language",
                          "documents_removed_inactive", "documents_removed_window", "documents_kept",
                          "users_kept", "users_outside_window"})
        c[k] = 0;
    for (auto s : {ActivityStatus::Active, ActivityStatus::Abandoned, ActivityStatus::Sporadic,
                   ActivityStatus::Truncated, ActivityStatus::BotFlagged})
        c["users_" + std::string(to_string(s))] = 0;

    for (const auto& t : parsed.timelines) {
        c["documents_in"] += t.documents.size();
        UserRecord rec;
        rec.user_id = t.user_id;
        rec.source_label = t.source_label;
        rec.status = classify_activity(t, window, config.reference_time);
        ++c["users_" + std::string(to_string(rec.status))];

        auto filtered = filter_documents(t, config.language);
        c["documents_removed_retweet"] += filtered.removed.retweet;
        c["documents_removed_language"] += filtered.removed.language;
        if (rec.status != ActivityStatus::Active) {
            c["documents_removed_inactive"] += filtered.timeline.documents.size();
            out.users.push_back(rec);
            continue;
        }
        auto trimmed = trim_to_window(filtered.timeline, config.window.window_years, config.reference_time);
        if (!trimmed || trimmed->documents.empty()) {
            c["documents_removed_window"] += filtered.timeline.documents.size();
            ++c["users_outside_window"];
            out.users.push_back(rec);
            continue;
        }
        c["documents_removed_window"] += filtered.timeline.documents.size() - trimmed->documents.size();
        c["documents_kept"] += trimmed->documents.size();
        ++c["users_kept"];
        rec.in_window = true;
        rec.documents = trimmed->documents.size();
        out.users.push_back(rec);
        out.kept.push_back(std::move(*trimmed));
    }
    return out;
}

std::vector<UserAnalysis> run_extract(const std::vector<Timeline>& timelines, const std::vector<UserRecord>& users,
                                      const PipelineConfig& config, StageCounts& counts) {
    const auto extraction = config.extraction();
    std::map<std::string, std::string> source;
    for (const auto& u : users) source[u.user_id] = u.source_label;

    std::vector<UserAnalysis> out(timelines.size());
    const auto n = static_cast<std::ptrdiff_t>(timelines.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& t = timelines[static_cast<std::size_t>(i)];
        auto& a = out[static_cast<std::size_t>(i)];
        a.user_id = t.user_id;
        const auto it = source.find(t.user_id);
        a.source_label = it != source.end() ? it->second : t.source_label;
        a.counts.user_id = t.user_id;
        double total = 0.0, distinct = 0.0;
        for (const auto& d : t.documents) {
            auto ex = extract_document(d.text, extraction);
            a.counts.removed += ex.tally;
            a.counts.total_word_tokens += ex.lemmas.size();
            total += static_cast<double>(ex.lemmas.size());
            distinct += static_cast<double>(std::set<std::string>(ex.lemmas.begin(), ex.lemmas.end()).size());
            for (auto& l : ex.lemmas) ++a.counts.counts[std::move(l)];
        }
        apply_min_count(a.counts, extraction.min_count);
        if (!t.documents.empty()) {
            const auto docs = static_cast<double>(t.documents.size());
            a.stats = DocumentStats{total / docs, distinct / docs};
        }
    }
    std::sort(out.begin(), out.end(), [](const UserAnalysis& a, const UserAnalysis& b) { return a.user_id < b.user_id; });

    counts["users_extracted"] = out.size();
    std::uint64_t tokens = 0, lemmas = 0, kept = 0;
    for (const auto& a : out) {
        tokens += a.counts.removed.tokens;
        lemmas += a.counts.total_word_tokens;
        for (const auto& [l, c] : a.counts.counts) kept += c;
    }
    counts["tokens_in"] = tokens;
    counts["lemma_tokens"] = lemmas;
    counts["lemma_tokens_kept"] = kept;
    return out;
}

void run_frequencies(std::vector<UserAnalysis>& analyses, double window_years) {
    for (auto& a : analyses) a.table = word_frequencies(a.counts, window_years);
}

void run_cluster(std::vector<UserAnalysis>& analyses, const PipelineConfig& config, StageCounts& counts) {
    MeanShiftConfig ms = config.mean_shift;
    ms.execution = Execution::Serial; // parallelism is across users here
    ms.validate();
    const auto n = static_cast<std::ptrdiff_t>(analyses.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& a = analyses[static_cast<std::size_t>(i)];
        try {
            a.clusters = cluster_user(a.table, ms);
        } catch (const DegenerateInputError&) {
            a.clusters.reset();
        }
    }
    std::uint64_t ok = 0;
    for (const auto& a : analyses) ok += a.clusters.has_value();
    counts["users_clustered"] = ok;
    counts["users_cluster_degenerate"] = analyses.size() - ok;
}

void run_layers(std::vector<UserAnalysis>& analyses) {
    for (auto& a : analyses)
        if (a.clusters) a.layers = build_layers(*a.clusters, a.user_id);
}

void run_tail_fit(std::vector<UserAnalysis>& analyses, const PipelineConfig& config, StageCounts& counts) {
    TailFitConfig tf;
    tf.execution = Execution::Serial;
    const auto n = static_cast<std::ptrdiff_t>(analyses.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& a = analyses[static_cast<std::size_t>(i)];
        const auto values = a.table.values();
        try {
            auto fit = fit_powerlaw(values, tf);
            if (config.n_boot > 0)
                fit.p_value = bootstrap_pvalue(values, fit, config.n_boot,
                                               derive_seed(config.seed, user_stream(a.user_id)), tf);
            a.tail = fit;
        } catch (const InsufficientDataError&) {
            a.tail.reset();
        } catch (const DegenerateInputError&) {
            a.tail.reset();
        }
    }
    std::uint64_t ok = 0;
    for (const auto& a : analyses) ok += a.tail.has_value();
    counts["users_tail_fitted"] = ok;
    counts["users_tail_skipped"] = analyses.size() - ok;
}

// ---------------------------------------------------------------- artifacts

void write_users(const fs::path& dir, const std::vector<UserRecord>& users) {
    auto out = open_out(dir / artifacts::kUsers);
    csv::write_row(out, {"user_id", "source", "status", "in_window", "documents"});
    auto status = open_out(dir / artifacts::kStatus);
    csv::write_row(status, {"user_id", "status"});
    for (const auto& u : users) {
        csv::write_row(out, {u.user_id, u.source_label, std::string(to_string(u.status)),
                             u.in_window ? "1" : "0", std::to_string(u.documents)});
        csv::write_row(status, {u.user_id, std::string(to_string(u.status))});
    }
}

void write_extraction(const fs::path& dir, const std::vector<UserAnalysis>& analyses) {
    {
        std::vector<LemmaCounts> all;
        for (const auto& a : analyses) all.push_back(a.counts);
        auto out = open_out(dir / artifacts::kLemmaCounts);
        write_lemma_counts(out, all);
    }
    auto tallies = open_out(dir / artifacts::kTallies);
    csv::write_row(tallies, {"user_id", "tokens", "mention", "hashtag", "link", "emoji", "nonlexical", "stopword",
                             "hapax", "lemma_tokens"});
    auto stats = open_out(dir / artifacts::kUserStats);
    csv::write_row(stats, {"user_id", "verbosity", "richness"});
    for (const auto& a : analyses) {
        const auto& r = a.counts.removed;
        csv::write_row(tallies, {a.user_id, std::to_string(r.tokens), std::to_string(r.social.mention),
                                 std::to_string(r.social.hashtag), std::to_string(r.social.link),
                                 std::to_string(r.social.emoji), std::to_string(r.nonlexical),
                                 std::to_string(r.stopword), std::to_string(r.hapax),
                                 std::to_string(a.counts.total_word_tokens)});
        if (a.stats) csv::write_row(stats, {a.user_id, fmt(a.stats->verbosity), fmt(a.stats->richness)});
    }
}

void write_frequencies(const fs::path& dir, const std::vector<UserAnalysis>& analyses) {
    std::vector<FrequencyTable> tables;
    for (const auto& a : analyses) tables.push_back(a.table);
    auto out = open_out(dir / artifacts::kFrequencies);
    write_frequency_tables(out, tables);
}

void write_clusters(const fs::path& dir, const std::vector<UserAnalysis>& analyses) {
    std::vector<std::string> users;
    std::vector<ClusterModel> models;
    for (const auto& a : analyses)
        if (a.clusters) {
            users.push_back(a.user_id);
            models.push_back(*a.clusters);
        }
    auto c = open_out(dir / artifacts::kClusters);
    write_cluster_models(c, users, models);
    auto s = open_out(dir / artifacts::kAssignments);
    write_assignments(s, users, models);
}

void write_user_layers(const fs::path& dir, const std::vector<UserAnalysis>& analyses) {
    auto out = open_out(dir / artifacts::kUserLayers);
    csv::write_row(out, {"user_id", "k", "rank", "cluster_size", "layer_size", "scaling_ratio"});
    for (const auto& a : analyses) {
        if (!a.layers) continue;
        const auto& l = *a.layers;
        for (std::size_t r = 0; r < l.layer_count(); ++r)
            csv::write_row(out, {a.user_id, std::to_string(l.layer_count()), std::to_string(r + 1),
                                 std::to_string(l.cluster_sizes[r]), std::to_string(l.layer_sizes[r]),
                                 r < l.scaling_ratios.size() ? fmt(l.scaling_ratios[r]) : ""});
    }
}

void write_tail_fits(const fs::path& dir, const AnalysisOutputs& outputs) {
    auto out = open_out(dir / artifacts::kTailFit);
    csv::write_row(out, {"user_id", "alpha", "xmin", "ks", "n_tail", "p_value", "n_boot", "seed", "rng"});
    for (const auto& a : outputs.analyses) {
        if (!a.tail) continue;
        const auto& t = *a.tail;
        csv::write_row(out, {a.user_id, fmt(t.alpha), fmt(t.xmin), fmt(t.ks_distance), std::to_string(t.n_tail),
                             t.p_value ? fmt(*t.p_value) : "", std::to_string(outputs.n_boot),
                             std::to_string(outputs.seed), std::string(kRngAlgorithm)});
    }
}

AnalysisOutputs load_outputs(const fs::path& dir, const PipelineConfig& config) {
    AnalysisOutputs out;
    out.window_years = config.window.window_years;
    out.regression = config.regression;
    out.n_boot = config.n_boot;
    out.seed = config.seed;

    std::map<std::string, UserAnalysis> by_user;
    std::map<std::string, std::string> source;
    auto has = [&](const char* name) { return fs::exists(dir / name); };

    if (has(artifacts::kUsers)) {
        const auto t = csv::read_file((dir / artifacts::kUsers).string());
        const auto cu = t.column("user_id"), cs = t.column("source"), cst = t.column("status"),
                   cw = t.column("in_window"), cd = t.column("documents");
        std::vector<UserRecord> users;
        for (const auto& row : t.rows) {
            UserRecord u{row[cu], row[cs], parse_activity_status(row[cst]), row[cw] == "1",
                         static_cast<std::size_t>(std::stoull(row[cd]))};
            source[u.user_id] = u.source_label;
            users.push_back(std::move(u));
        }
        out.users = std::move(users);
    }
    auto user = [&](const std::string& id) -> UserAnalysis& {
        auto& a = by_user[id];
        if (a.user_id.empty()) {
            a.user_id = id;
            const auto it = source.find(id);
            a.source_label = it != source.end() ? it->second : "corpus";
            a.counts.user_id = id;
            a.table.user_id = id;
        }
        return a;
    };

    if (has(artifacts::kLemmaCounts)) {
        auto in = open_in(dir / artifacts::kLemmaCounts, "extract");
        for (auto& lc : read_lemma_counts(in, artifacts::kLemmaCounts)) {
            auto& a = user(lc.user_id);
            a.counts.counts = std::move(lc.counts);
            a.counts.total_word_tokens = lc.total_word_tokens;
        }
        out.extracted = true;
    }
    if (has(artifacts::kTallies)) {
        const auto t = csv::read_file((dir / artifacts::kTallies).string());
        for (const auto& row : t.rows) {
            auto& a = user(row[t.column("user_id")]);
            auto& r = a.counts.removed;
            auto u = [&](const char* col) { return static_cast<std::size_t>(std::stoull(row[t.column(col)])); };
            r.tokens = u("tokens");
            r.social.mention = u("mention");
            r.social.hashtag = u("hashtag");
            r.social.link = u("link");
            r.social.emoji = u("emoji");
            r.nonlexical = u("nonlexical");
            r.stopword = u("stopword");
            r.hapax = u("hapax");
            a.counts.total_word_tokens = u("lemma_tokens");
        }
    } else {
        out.extracted = false; // lemma counts alone (e.g. simulated) carry no text statistics
    }
    if (has(artifacts::kUserStats)) {
        const auto t = csv::read_file((dir / artifacts::kUserStats).string());
        for (const auto& row : t.rows)
            user(row[t.column("user_id")]).stats =
                DocumentStats{parse_num(row[t.column("verbosity")], "user_stats"),
                              parse_num(row[t.column("richness")], "user_stats")};
    }
    if (has(artifacts::kFrequencies)) {
        auto in = open_in(dir / artifacts::kFrequencies, "freq");
        for (auto& ft : read_frequency_tables(in, artifacts::kFrequencies)) {
            out.window_years = ft.window_years;
            auto& a = user(ft.user_id);
            if (a.counts.counts.empty()) a.counts.counts = ft.counts;
            a.table = std::move(ft);
        }
        out.has_frequencies = true;
    } else if (has(artifacts::kLemmaCounts)) {
        for (auto& [id, a] : by_user) a.table.window_years = out.window_years;
    }
    if (has(artifacts::kClusters) && has(artifacts::kAssignments)) {
        auto c = open_in(dir / artifacts::kClusters, "cluster");
        auto s = open_in(dir / artifacts::kAssignments, "cluster");
        for (auto& uc : read_cluster_models(c, s, artifacts::kClusters)) user(uc.user_id).clusters = std::move(uc.model);
        out.clustered = true;
    }
    if (has(artifacts::kUserLayers)) {
        const auto t = csv::read_file((dir / artifacts::kUserLayers).string());
        std::map<std::string, std::vector<std::size_t>> sizes;
        for (const auto& row : t.rows)
            sizes[row[t.column("user_id")]].push_back(static_cast<std::size_t>(std::stoull(row[t.column("cluster_size")])));
        for (auto& [id, s] : sizes) user(id).layers = layers_from_cluster_sizes(std::move(s), id);
        out.layered = true;
    }
    if (has(artifacts::kTailFit)) {
        const auto t = csv::read_file((dir / artifacts::kTailFit).string());
        for (const auto& row : t.rows) {
            TailFit f;
            f.alpha = parse_num(row[t.column("alpha")], "tailfit");
            f.xmin = parse_num(row[t.column("xmin")], "tailfit");
            f.ks_distance = parse_num(row[t.column("ks")], "tailfit");
            f.n_tail = static_cast<std::size_t>(std::stoull(row[t.column("n_tail")]));
            if (const auto& p = row[t.column("p_value")]; !p.empty()) f.p_value = parse_num(p, "tailfit");
            out.n_boot = static_cast<std::size_t>(std::stoull(row[t.column("n_boot")]));
            out.seed = std::stoull(row[t.column("seed")]);
            user(row[t.column("user_id")]).tail = f;
        }
        out.tail_fitted = true;
    }
    for (auto& [id, a] : by_user) out.analyses.push_back(std::move(a));
    return out;
}

// ---------------------------------------------------------------- figures

std::vector<fs::path> emit_figure_data(const AnalysisOutputs& outputs, const fs::path& dir) {
    if (!outputs.users) throw DependencyError("ingest", "dataset_summary.csv needs the ingest stage");
    if (!outputs.extracted) throw DependencyError("extract", "verbosity.csv, richness.csv and removed_tokens.csv need the extract stage");
    if (!outputs.has_frequencies) throw DependencyError("freq", "ccdf.csv needs the freq stage");
    if (!outputs.clustered) throw DependencyError("cluster", "cluster_hist.csv and layers.csv need the cluster stage");
    if (!outputs.layered) throw DependencyError("layers", "layers.csv, ratios.csv and regression.csv need the layers stage");
    if (!outputs.tail_fitted) throw DependencyError("fit-tail", "tailfit_rejections.csv needs the fit-tail stage");

    fs::create_directories(dir);
    const std::string T = fmt(outputs.window_years);
    const auto groups = by_dataset(outputs.analyses);
    std::vector<fs::path> written;
    auto file = [&](const char* name) {
        written.push_back(dir / name);
        return open_out(dir / name);
    };

    {
        auto out = file("dataset_summary.csv");
        csv::write_row(out, {"dataset", "T", "users", "avg_documents"});
        std::map<std::string, std::pair<std::size_t, std::size_t>> agg;
        for (const auto& u : *outputs.users)
            if (u.in_window) {
                agg[u.source_label].first++;
                agg[u.source_label].second += u.documents;
            }
        for (const auto& [label, v] : agg)
            csv::write_row(out, {label, T, std::to_string(v.first),
                                 fmt(static_cast<double>(v.second) / static_cast<double>(v.first))});
    }
    {
        auto out = file("removed_tokens.csv");
        csv::write_row(out, {"dataset", "tokens", "hashtag_pct", "link_pct", "emoji_pct", "mention_pct", "hashtag",
                             "link", "emoji", "mention", "nonlexical", "stopword", "hapax"});
        for (const auto& [label, users] : groups) {
            ExtractionTally t;
            for (const auto* a : users) t += a->counts.removed;
            auto pct = [&](std::size_t c) { return t.tokens ? fmt(100.0 * static_cast<double>(c) / static_cast<double>(t.tokens)) : std::string(); };
            csv::write_row(out, {label, std::to_string(t.tokens), pct(t.social.hashtag), pct(t.social.link),
                                 pct(t.social.emoji), pct(t.social.mention), std::to_string(t.social.hashtag),
                                 std::to_string(t.social.link), std::to_string(t.social.emoji),
                                 std::to_string(t.social.mention), std::to_string(t.nonlexical),
                                 std::to_string(t.stopword), std::to_string(t.hapax)});
        }
    }
    {
        auto verb = file("verbosity.csv");
        auto rich = file("richness.csv");
        for (auto* out : {&verb, &rich}) csv::write_row(*out, {"label", "mean", "ci_low", "ci_high", "n"});
        for (const auto& [label, users] : groups) {
            std::vector<double> v, r;
            for (const auto* a : users)
                if (a->stats) {
                    v.push_back(a->stats->verbosity);
                    r.push_back(a->stats->richness);
                }
            write_ci_row(verb, label, v);
            write_ci_row(rich, label, r);
        }
    }
    {
        auto out = file("ccdf.csv");
        csv::write_row(out, {"dataset", "user_id", "value", "probability"});
        for (const auto& a : outputs.analyses) {
            if (a.table.size() == 0) continue;
            const auto values = a.table.values();
            for (const auto& p : ccdf(values)) csv::write_row(out, {a.source_label, a.user_id, fmt(p.value), fmt(p.probability)});
        }
    }
    {
        auto out = file("cluster_hist.csv");
        csv::write_row(out, {"dataset", "T", "k", "users", "is_modal"});
        for (const auto& [label, users] : groups) {
            std::vector<ClusterModel> models;
            for (const auto* a : users)
                if (a->clusters) models.push_back(*a->clusters);
            if (models.empty()) continue;
            const auto h = cluster_count_histogram(models);
            for (const auto& [k, n] : h.users_by_count)
                csv::write_row(out, {label, T, std::to_string(k), std::to_string(n), k == h.modal_count ? "1" : "0"});
        }
    }
    {
        auto layers = file("layers.csv");
        auto ratios = file("ratios.csv");
        auto regression = file("regression.csv");
        csv::write_row(layers, {"dataset", "T", "k", "rank", "mean_size", "ci_lo", "ci_hi", "n"});
        csv::write_row(ratios, {"dataset", "T", "k", "rank", "mean_ratio", "ci_lo", "ci_hi", "n"});
        csv::write_row(regression, {"dataset", "T", "k", "rank", "slope", "intercept", "r2", "n", "model"});
        for (const auto& [label, users] : groups) {
            std::vector<EgoNetworkOfWords> nets;
            for (const auto* a : users)
                if (a->layers) nets.push_back(*a->layers);
            if (nets.empty()) continue;
            std::vector<EgoNetworkOfWords> cohort;
            for (auto i : modal_cohort(nets)) cohort.push_back(nets[i]);
            if (cohort.size() < 2) continue;
            const std::string k = std::to_string(cohort.front().layer_count());
            for (const auto& s : cohort_layer_summary(cohort)) {
                const auto rank = std::to_string(s.layer_rank);
                csv::write_row(layers, {label, T, k, rank, fmt(s.size.mean), fmt(s.size.ci_low), fmt(s.size.ci_high),
                                        std::to_string(s.size.n)});
                if (s.ratio)
                    csv::write_row(ratios, {label, T, k, rank, fmt(s.ratio->mean), fmt(s.ratio->ci_low),
                                            fmt(s.ratio->ci_high), std::to_string(s.ratio->n)});
            }
            try {
                for (const auto& r : layer_size_regression(cohort, outputs.regression))
                    csv::write_row(regression, {label, T, k, std::to_string(r.layer_rank), fmt(r.slope), fmt(r.intercept),
                                                fmt(r.r_squared), std::to_string(r.n_users),
                                                std::string(regression_name(outputs.regression))});
            } catch (const DegenerateInputError&) {
                // every cohort member has the same vocabulary size
            }
        }
    }
    {
        auto out = file("tailfit_rejections.csv");
        csv::write_row(out, {"dataset", "T", "p_lt_0.1", "p_lt_0.05", "p_lt_0.01", "n"});
        for (const auto& [label, users] : groups) {
            std::vector<double> p;
            for (const auto* a : users)
                if (a->tail && a->tail->p_value) p.push_back(*a->tail->p_value);
            if (p.empty()) continue;
            const auto r = rejection_table(p);
            csv::write_row(out, {label, T, fmt(r.below_010), fmt(r.below_005), fmt(r.below_001), std::to_string(r.n)});
        }
    }
    return written;
}

// ---------------------------------------------------------------- manifest

std::string fnv1a64_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("io", "cannot read " + path.string());
    std::uint64_t h = 0xCBF29CE484222325ULL;
    std::string buf(1 << 16, '\0');
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        h = fnv1a64(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())), h);
    }
    return hex64(h);
}

void write_manifest(const fs::path& path, const RunManifest& m) {
    json j;
    j["tool_version"] = m.tool_version;
    j["config"] = m.config;
    j["input_digests"] = m.input_digests;
    j["timestamps"] = m.timestamps;
    j["stage_counts"] = m.stage_counts;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const fs::path& path) {
    auto in = open_in(path, "run");
    const json j = json::parse(in);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
    m.timestamps = j.at("timestamps").get<std::map<std::string, std::int64_t>>();
    m.stage_counts = j.at("stage_counts").get<StageCounts>();
    return m;
}

RunManifest run_pipeline(const fs::path& input, const PipelineConfig& config, const fs::path& out_dir) {
    set_jobs(config.jobs);
    fs::create_directories(out_dir);

    RunManifest manifest;
    manifest.config = config.snapshot();
    manifest.input_digests[input.filename().string()] = fnv1a64_file(input);

    const auto parsed = parse_timeline_file(input.string());
    auto ingest = run_ingest(parsed, config);
    manifest.stage_counts = ingest.counts;
    {
        Seconds lo = std::numeric_limits<Seconds>::max(), hi = 0, dl = 0;
        for (const auto& t : parsed.timelines) {
            if (t.documents.empty()) continue;
            lo = std::min(lo, t.documents.front().timestamp);
            hi = std::max(hi, t.documents.back().timestamp);
            dl = std::max(dl, t.download_time);
        }
        manifest.timestamps["first_document"] = lo;
        manifest.timestamps["last_document"] = hi;
        manifest.timestamps["latest_download"] = dl;
        if (config.reference_time) manifest.timestamps["reference_time"] = *config.reference_time;
    }
    {
        auto out = open_out(out_dir / artifacts::kTimelines);
        write_timelines(out, ingest.kept);
    }
    write_users(out_dir, ingest.users);
    if (ingest.kept.empty()) throw EmptyCorpusError("ingest", "empty corpus: no timeline survived filtering and windowing");

    AnalysisOutputs outputs;
    outputs.window_years = config.window.window_years;
    outputs.regression = config.regression;
    outputs.n_boot = config.n_boot;
    outputs.seed = config.seed;
    outputs.users = ingest.users;

    outputs.analyses = run_extract(ingest.kept, ingest.users, config, manifest.stage_counts);
    outputs.extracted = true;
    write_extraction(out_dir, outputs.analyses);

    run_frequencies(outputs.analyses, config.window.window_years);
    outputs.has_frequencies = true;
    write_frequencies(out_dir, outputs.analyses);

    if (!config.skip_cluster) {
        run_cluster(outputs.analyses, config, manifest.stage_counts);
        outputs.clustered = true;
        write_clusters(out_dir, outputs.analyses);
        run_layers(outputs.analyses);
        outputs.layered = true;
        write_user_layers(out_dir, outputs.analyses);
    }
    if (!config.skip_tail) {
        run_tail_fit(outputs.analyses, config, manifest.stage_counts);
        outputs.tail_fitted = true;
        write_tail_fits(out_dir, outputs);
    }
    write_manifest(out_dir / artifacts::kManifest, manifest);
    emit_figure_data(outputs, out_dir);
    return manifest;
}

} // namespace egowords
