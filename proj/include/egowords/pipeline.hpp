#pragma once

#include "egowords/clustering.hpp"
#include "egowords/extract.hpp"
#include "egowords/frequency.hpp"
#include "egowords/ingest.hpp"
#include "egowords/layers.hpp"
#include "egowords/tailfit.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace egowords {

inline constexpr std::string_view kToolVersion = "0.3.0";

struct PipelineConfig {
    WindowConfig window;
    double abandon_months = 6.0; // mirrored into window.abandonment_days
    std::string language = "en";
    std::optional<Seconds> reference_time;
    std::string stopwords = "builtin";
    std::string lemmatizer{kBuiltinLemmatizerId};
    std::uint64_t min_count = 2;
    MeanShiftConfig mean_shift;
    RegressionKind regression = RegressionKind::Intercept;
    std::size_t n_boot = 1000;
    std::uint64_t seed = 0;
    int jobs = 0;
    bool skip_cluster = false;
    bool skip_tail = false;

    ExtractionConfig extraction() const;
    // Flat key -> value snapshot, also the config-file key set.
    std::map<std::string, std::string> snapshot() const;
};

struct UserRecord {
    std::string user_id;
    std::string source_label;
    ActivityStatus status = ActivityStatus::Active;
    bool in_window = false;
    std::size_t documents = 0; // after filtering and trimming
};

struct UserAnalysis {
    std::string user_id;
    std::string source_label;
    std::optional<DocumentStats> stats;
    LemmaCounts counts;
    FrequencyTable table;
    std::optional<ClusterModel> clusters;
    std::optional<EgoNetworkOfWords> layers;
    std::optional<TailFit> tail;
};

// Everything downstream stages and figure emission need. Optional members
// are absent when the producing stage did not run.
struct AnalysisOutputs {
    double window_years = 1.0;
    RegressionKind regression = RegressionKind::Intercept;
    std::size_t n_boot = 0;
    std::uint64_t seed = 0;
    std::optional<std::vector<UserRecord>> users;      // ingest
    bool extracted = false;                            // extract
    bool has_frequencies = false;                      // freq
    bool clustered = false;                            // cluster
    bool layered = false;                              // layers
    bool tail_fitted = false;                          // fit-tail
    std::vector<UserAnalysis> analyses;                // sorted by user_id
};

using StageCounts = std::map<std::string, std::uint64_t>;

struct IngestOutput {
    std::vector<Timeline> kept; // active, filtered, trimmed; sorted by user
    std::vector<UserRecord> users;
    StageCounts counts;
};

IngestOutput run_ingest(const ParseResult& parsed, const PipelineConfig& config);

// Per-user extraction, frequencies and statistics.
std::vector<UserAnalysis> run_extract(const std::vector<Timeline>& timelines,
                                      const std::vector<UserRecord>& users,
                                      const PipelineConfig& config, StageCounts& counts);
void run_frequencies(std::vector<UserAnalysis>& analyses, double window_years);
void run_cluster(std::vector<UserAnalysis>& analyses, const PipelineConfig& config,
                 StageCounts& counts);
void run_layers(std::vector<UserAnalysis>& analyses);
void run_tail_fit(std::vector<UserAnalysis>& analyses, const PipelineConfig& config,
                  StageCounts& counts);

// Intermediate artifacts shared by the individually invocable stages.
namespace artifacts {
inline constexpr const char* kTimelines = "timelines.jsonl";
inline constexpr const char* kUsers = "users.csv";
inline constexpr const char* kStatus = "status.csv";
inline constexpr const char* kLemmaCounts = "lemma_counts.csv";
inline constexpr const char* kTallies = "extraction_tallies.csv";
inline constexpr const char* kUserStats = "user_stats.csv";
inline constexpr const char* kFrequencies = "freq.csv";
inline constexpr const char* kClusters = "clusters.csv";
inline constexpr const char* kAssignments = "assignments.csv";
inline constexpr const char* kUserLayers = "user_layers.csv";
inline constexpr const char* kTailFit = "tailfit.csv";
inline constexpr const char* kManifest = "manifest.json";
} // namespace artifacts

void write_users(const std::filesystem::path& dir, const std::vector<UserRecord>& users);
void write_extraction(const std::filesystem::path& dir, const std::vector<UserAnalysis>& analyses);
void write_frequencies(const std::filesystem::path& dir, const std::vector<UserAnalysis>& analyses);
void write_clusters(const std::filesystem::path& dir, const std::vector<UserAnalysis>& analyses);
void write_user_layers(const std::filesystem::path& dir, const std::vector<UserAnalysis>& analyses);
void write_tail_fits(const std::filesystem::path& dir, const AnalysisOutputs& outputs);

// Rebuilds the analysis state from whatever intermediate artifacts exist.
AnalysisOutputs load_outputs(const std::filesystem::path& dir, const PipelineConfig& config);

inline constexpr std::array<const char*, 10> kFigureFiles = {
    "ccdf.csv",        "verbosity.csv",  "richness.csv",       "cluster_hist.csv",
    "layers.csv",      "ratios.csv",     "regression.csv",     "dataset_summary.csv",
    "removed_tokens.csv", "tailfit_rejections.csv"};

// Writes one file per figure or table analogue. A missing upstream stage
// raises DependencyError naming that stage.
std::vector<std::filesystem::path> emit_figure_data(const AnalysisOutputs& outputs,
                                                    const std::filesystem::path& dir);

struct RunManifest {
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_digests; // path -> fnv1a64
    std::string tool_version{kToolVersion};
    std::map<std::string, std::int64_t> timestamps; // data-derived, never wall clock
    StageCounts stage_counts;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

std::string fnv1a64_file(const std::filesystem::path& path);

// Full pipeline from a timeline corpus to every artifact plus the manifest.
RunManifest run_pipeline(const std::filesystem::path& input, const PipelineConfig& config,
                         const std::filesystem::path& out_dir);

} // namespace egowords
