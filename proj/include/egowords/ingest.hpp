#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace egowords {

using Seconds = std::int64_t;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerYear = 365.25;
inline constexpr double kSecondsPerYear = kDaysPerYear * kSecondsPerDay;

struct Document {
    std::string user_id;
    Seconds timestamp = 0;
    std::string text;
    bool is_plain_retweet = false;
    std::string language = "en";
    std::optional<bool> bot_score_flag;
    // Set by the data provider when this is the account's first-ever post.
    std::optional<bool> is_first_post;

    bool operator==(const Document&) const = default;
};

struct Timeline {
    std::string user_id;
    std::vector<Document> documents; // non-decreasing timestamps
    Seconds download_time = 0;
    std::string source_label;

    bool operator==(const Timeline&) const = default;
};

enum class ActivityStatus { Active, Abandoned, Sporadic, Truncated, BotFlagged };

std::string_view to_string(ActivityStatus status);
ActivityStatus parse_activity_status(std::string_view name);

struct WindowConfig {
    double window_years = 1.0;
    double abandonment_days = 182.0;
    double sporadic_fraction = 0.5;
    std::size_t api_cap = 3200;

    void validate() const;
};

// Whole days in a span of calendar months of 365.25/12 days each; six months
// gives 182 days.
double months_to_days(double months);

struct ParseResult {
    std::vector<Timeline> timelines; // sorted by user_id
    std::size_t records = 0;
    std::size_t skipped = 0;
};

// Reads line-delimited JSON records, one document per line. Lines that are
// not objects or lack a required field are skipped and counted. Optional
// per-line fields `download_time` and `source` populate the timeline; the
// download time defaults to the latest document timestamp.
ParseResult parse_timeline_stream(std::istream& in, std::string_view default_source = "corpus");
ParseResult parse_timeline_file(const std::string& path, std::string_view default_source = "corpus");

// Writes the same record format back, one line per document, ordered by
// user then timestamp.
void write_timelines(std::ostream& out, const std::vector<Timeline>& timelines);

struct RemovalTally {
    std::size_t retweet = 0;
    std::size_t language = 0;

    std::size_t total() const { return retweet + language; }
};

struct FilterResult {
    Timeline timeline;
    RemovalTally removed;
};

FilterResult filter_documents(const Timeline& timeline, std::string_view allowed_language);

// `now` defaults to the timeline's download time.
ActivityStatus classify_activity(const Timeline& timeline, const WindowConfig& config,
                                 std::optional<Seconds> now = std::nullopt);

// Number of UTC calendar months in [from, to] (inclusive of both end months),
// and how many of them hold no document.
struct MonthActivity {
    std::size_t total_months = 0;
    std::size_t empty_months = 0;
};
MonthActivity month_activity(const Timeline& timeline, Seconds from, Seconds to);

// Keeps documents inside [reference - T years, reference]; absent when the
// timeline spans less than T years before the reference time.
std::optional<Timeline> trim_to_window(const Timeline& timeline, double window_years,
                                       std::optional<Seconds> reference_time = std::nullopt);

struct DatasetSummary {
    std::string source_label;
    double window_years = 0.0;
    std::size_t users = 0;
    std::optional<double> avg_documents;
};

// One summary per distinct source label, sorted by label. An empty input
// yields a single row with no users and no average.
std::vector<DatasetSummary> dataset_summary(const std::vector<Timeline>& timelines,
                                            double window_years);

} // namespace egowords
