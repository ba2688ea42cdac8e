#include "egowords/ingest.hpp"

#include "egowords/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace egowords {

namespace {

using nlohmann::json;

std::optional<Document> parse_record(const std::string& line, std::optional<Seconds>& download,
                                     std::optional<std::string>& source) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) return std::nullopt;

    const auto user = j.find("user_id");
    const auto ts = j.find("timestamp");
    const auto text = j.find("text");
    if (user == j.end() || !user->is_string() || user->get_ref<const std::string&>().empty())
        return std::nullopt;
    if (ts == j.end() || !ts->is_number_integer()) return std::nullopt;
    if (text == j.end() || !text->is_string()) return std::nullopt;

    Document d;
    d.user_id = user->get<std::string>();
    d.timestamp = ts->get<Seconds>();
    d.text = text->get<std::string>();
    if (d.timestamp <= 0) return std::nullopt;

    auto boolean = [&](const char* key) -> std::optional<std::optional<bool>> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::optional<bool>{};
        if (!it->is_boolean()) return std::nullopt;
        return std::optional<bool>{it->get<bool>()};
    };
    auto rt = boolean("is_plain_retweet");
    auto bot = boolean("bot");
    auto first = boolean("is_first_post");
    if (!rt || !bot || !first) return std::nullopt;
    d.is_plain_retweet = rt->value_or(false);
    d.bot_score_flag = *bot;
    d.is_first_post = *first;

    if (auto it = j.find("language"); it != j.end()) {
        if (!it->is_string()) return std::nullopt;
        d.language = it->get<std::string>();
    }
    if (d.text.empty() && !d.is_plain_retweet) return std::nullopt;

    if (auto it = j.find("download_time"); it != j.end()) {
        if (!it->is_number_integer()) return std::nullopt;
        const auto t = it->get<Seconds>();
        download = download ? std::max(*download, t) : t;
    }
    if (auto it = j.find("source"); it != j.end()) {
        if (!it->is_string()) return std::nullopt;
        source = it->get<std::string>();
    }
    return d;
}

// Months since 0000-03 style epoch; only differences matter.
std::int64_t month_index(Seconds t) {
    std::int64_t z = (t >= 0 ? t : t - 86399) / 86400;
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
    return y * 12 + (m - 1);
}

} // namespace

std::string_view to_string(ActivityStatus status) {
    switch (status) {
    case ActivityStatus::Active: return "Active";
    case ActivityStatus::Abandoned: return "Abandoned";
    case ActivityStatus::Sporadic: return "Sporadic";
    case ActivityStatus::Truncated: return "Truncated";
    case ActivityStatus::BotFlagged: return "BotFlagged";
    }
    return "?";
}

ActivityStatus parse_activity_status(std::string_view name) {
    for (auto s : {ActivityStatus::Active, ActivityStatus::Abandoned, ActivityStatus::Sporadic,
                   ActivityStatus::Truncated, ActivityStatus::BotFlagged})
        if (to_string(s) == name) return s;
    throw InputError("ingest", "unknown activity status '" + std::string(name) + "'");
}

double months_to_days(double months) { return std::floor(months * kDaysPerYear / 12.0); }

void WindowConfig::validate() const {
    if (!(window_years > 0)) throw ConfigError("ingest", "window years must be positive");
    if (!(abandonment_days >= 0)) throw ConfigError("ingest", "abandonment threshold must be >= 0");
    if (!(sporadic_fraction > 0 && sporadic_fraction <= 1))
        throw ConfigError("ingest", "sporadic fraction must lie in (0, 1]");
    if (api_cap == 0) throw ConfigError("ingest", "api cap must be positive");
}

ParseResult parse_timeline_stream(std::istream& in, std::string_view default_source) {
    if (!in) throw InputError("ingest", "unreadable input stream");

    struct Pending {
        Timeline timeline;
        std::optional<Seconds> download;
        std::optional<std::string> source;
    };
    std::map<std::string, Pending> by_user;

    ParseResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++result.records;
        std::optional<Seconds> download;
        std::optional<std::string> source;
        auto doc = parse_record(line, download, source);
        if (!doc) {
            ++result.skipped;
            continue;
        }
        auto& p = by_user[doc->user_id];
        if (download) p.download = p.download ? std::max(*p.download, *download) : *download;
        if (source) p.source = std::move(source);
        p.timeline.documents.push_back(std::move(*doc));
    }
    if (in.bad()) throw InputError("ingest", "read error on input stream");
    if (by_user.empty()) throw EmptyCorpusError("ingest", "empty corpus: no valid records");

    for (auto& [user, p] : by_user) {
        auto& t = p.timeline;
        t.user_id = user;
        std::stable_sort(t.documents.begin(), t.documents.end(),
                         [](const Document& a, const Document& b) { return a.timestamp < b.timestamp; });
        const Seconds last = t.documents.back().timestamp;
        t.download_time = std::max(p.download.value_or(last), last);
        t.source_label = p.source.value_or(std::string(default_source));
        result.timelines.push_back(std::move(t));
    }
    return result;
}

ParseResult parse_timeline_file(const std::string& path, std::string_view default_source) {
    std::ifstream in(path);
    if (!in) throw InputError("ingest", "cannot open " + path);
    return parse_timeline_stream(in, default_source);
}

void write_timelines(std::ostream& out, const std::vector<Timeline>& timelines) {
    std::vector<const Timeline*> order;
    for (const auto& t : timelines) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](const Timeline* a, const Timeline* b) { return a->user_id < b->user_id; });
    for (const Timeline* t : order) {
        for (const auto& d : t->documents) {
            json j;
            j["user_id"] = d.user_id;
            j["timestamp"] = d.timestamp;
            j["text"] = d.text;
            j["is_plain_retweet"] = d.is_plain_retweet;
            j["language"] = d.language;
            if (d.bot_score_flag) j["bot"] = *d.bot_score_flag;
            if (d.is_first_post) j["is_first_post"] = *d.is_first_post;
            j["download_time"] = t->download_time;
            j["source"] = t->source_label;
            out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
        }
    }
}

FilterResult filter_documents(const Timeline& timeline, std::string_view allowed_language) {
    FilterResult r;
    r.timeline.user_id = timeline.user_id;
    r.timeline.download_time = timeline.download_time;
    r.timeline.source_label = timeline.source_label;
    for (const auto& d : timeline.documents) {
        if (d.is_plain_retweet)
            ++r.removed.retweet;
        else if (d.language != allowed_language)
            ++r.removed.language;
        else
            r.timeline.documents.push_back(d);
    }
    return r;
}

MonthActivity month_activity(const Timeline& timeline, Seconds from, Seconds to) {
    MonthActivity a;
    if (to < from) return a;
    const auto first = month_index(from);
    const auto last = month_index(to);
    a.total_months = static_cast<std::size_t>(last - first + 1);
    std::set<std::int64_t> active;
    for (const auto& d : timeline.documents)
        if (d.timestamp >= from && d.timestamp <= to) active.insert(month_index(d.timestamp));
    a.empty_months = a.total_months - active.size();
    return a;
}

ActivityStatus classify_activity(const Timeline& timeline, const WindowConfig& config,
                                 std::optional<Seconds> now) {
    const auto& docs = timeline.documents;
    if (docs.empty()) throw ClassificationError("ingest", "cannot classify empty timeline " + timeline.user_id);

    if (std::any_of(docs.begin(), docs.end(), [](const Document& d) { return d.bot_score_flag.value_or(false); }))
        return ActivityStatus::BotFlagged;

    const Seconds t_now = now.value_or(timeline.download_time);
    Seconds largest_gap = 0;
    for (std::size_t i = 1; i < docs.size(); ++i)
        largest_gap = std::max(largest_gap, docs[i].timestamp - docs[i - 1].timestamp);

    const double since_last = static_cast<double>(t_now - docs.back().timestamp);
    if (since_last > static_cast<double>(largest_gap) + config.abandonment_days * kSecondsPerDay)
        return ActivityStatus::Abandoned;

    const auto months = month_activity(timeline, docs.front().timestamp, t_now);
    if (static_cast<double>(months.empty_months) >
        config.sporadic_fraction * static_cast<double>(months.total_months))
        return ActivityStatus::Sporadic;

    if (docs.front().is_first_post.value_or(false) && docs.size() <= config.api_cap)
        return ActivityStatus::Truncated;

    return ActivityStatus::Active;
}

std::optional<Timeline> trim_to_window(const Timeline& timeline, double window_years,
                                       std::optional<Seconds> reference_time) {
    if (!(window_years > 0)) throw ArgumentError("window", "window years must be positive");
    if (timeline.documents.empty()) return std::nullopt;
    const Seconds ref = reference_time.value_or(timeline.download_time);
    const double span = window_years * kSecondsPerYear;
    const double start = static_cast<double>(ref) - span;
    if (static_cast<double>(ref - timeline.documents.front().timestamp) < span) return std::nullopt;

    Timeline out;
    out.user_id = timeline.user_id;
    out.download_time = timeline.download_time;
    out.source_label = timeline.source_label;
    for (const auto& d : timeline.documents)
        if (static_cast<double>(d.timestamp) >= start && d.timestamp <= ref) out.documents.push_back(d);
    return out;
}

std::vector<DatasetSummary> dataset_summary(const std::vector<Timeline>& timelines,
                                            double window_years) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> by_label;
    for (const auto& t : timelines) {
        auto& [users, docs] = by_label[t.source_label];
        ++users;
        docs += t.documents.size();
    }
    std::vector<DatasetSummary> out;
    if (by_label.empty()) {
        out.push_back({"", window_years, 0, std::nullopt});
        return out;
    }
    for (const auto& [label, v] : by_label)
        out.push_back({label, window_years, v.first,
                       static_cast<double>(v.second) / static_cast<double>(v.first)});
    return out;
}

} // namespace egowords
