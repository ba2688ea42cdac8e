#include "egowords/error.hpp"
#include "egowords/ingest.hpp"

#include "activity_cases.hpp"

#include <doctest.h>

#include <sstream>

using namespace egowords;

namespace {

ParseResult parse(const std::string& text) {
    std::istringstream in(text);
    return parse_timeline_stream(in);
}

Timeline with_docs(std::vector<std::pair<Seconds, std::pair<bool, std::string>>> docs) {
    Timeline t;
    t.user_id = "u";
    for (auto& [ts, d] : docs) t.documents.push_back(Document{"u", ts, "text", d.first, d.second, {}, {}});
    t.download_time = t.documents.empty() ? 0 : t.documents.back().timestamp;
    return t;
}

} // namespace

TEST_CASE("single valid record") {
    const auto r = parse(R"({"user_id":"u1","timestamp":1000,"text":"hello world"})" "\n");
    REQUIRE(r.timelines.size() == 1);
    CHECK(r.timelines[0].documents.size() == 1);
    CHECK(r.timelines[0].documents[0].language == "en");
    CHECK_FALSE(r.timelines[0].documents[0].is_plain_retweet);
    CHECK(r.timelines[0].download_time == 1000);
    CHECK(r.skipped == 0);
}

TEST_CASE("documents are reordered by timestamp") {
    const auto r = parse(R"({"user_id":"u1","timestamp":2000,"text":"b"})" "\n"
                         R"({"user_id":"u1","timestamp":1000,"text":"a"})" "\n");
    REQUIRE(r.timelines.size() == 1);
    CHECK(r.timelines[0].documents[0].timestamp == 1000);
    CHECK(r.timelines[0].documents[1].text == "b");
}

TEST_CASE("malformed lines are skipped and counted") {
    const auto r = parse(R"({"user_id":"u1","timestamp":1000})" "\n"
                         "not json\n"
                         R"({"user_id":"u1","timestamp":"x","text":"a"})" "\n"
                         R"({"user_id":"u2","timestamp":5,"text":"ok","bot":true,"is_first_post":false})" "\n\n");
    CHECK(r.records == 4);
    CHECK(r.skipped == 3);
    REQUIRE(r.timelines.size() == 1);
    CHECK(r.timelines[0].documents[0].bot_score_flag == true);
    CHECK(r.timelines[0].documents[0].is_first_post == false);
}

TEST_CASE("missing text alone gives a skip count of one") {
    const auto r = parse(R"({"user_id":"u1","timestamp":1,"text":"a"})" "\n" R"({"user_id":"u1","timestamp":2})" "\n");
    CHECK(r.skipped == 1);
}

TEST_CASE("empty input is an empty corpus") {
    CHECK_THROWS_AS(parse(""), EmptyCorpusError);
    CHECK_THROWS_AS(parse("garbage\n"), EmptyCorpusError);
}

TEST_CASE("parse, serialize, parse is the identity") {
    const auto first = parse(R"({"user_id":"b","timestamp":20,"text":"x \"q\" é","language":"fr","download_time":99,"source":"s1"})" "\n"
                             R"({"user_id":"a","timestamp":10,"text":"y","is_plain_retweet":true,"bot":false,"is_first_post":true})" "\n"
                             R"({"user_id":"a","timestamp":5,"text":"z"})" "\n");
    std::ostringstream out;
    write_timelines(out, first.timelines);
    const auto second = parse(out.str());
    CHECK(second.timelines == first.timelines);
    CHECK(first.timelines[1].download_time == 99);
    CHECK(first.timelines[1].source_label == "s1");
    CHECK(first.timelines[0].source_label == "corpus");
}

TEST_CASE("retweet and language filter") {
    auto r = filter_documents(with_docs({{1, {false, "en"}}, {2, {true, "en"}}, {3, {false, "en"}}}), "en");
    CHECK(r.timeline.documents.size() == 2);
    CHECK(r.removed.retweet == 1);

    r = filter_documents(with_docs({{1, {false, "fr"}}, {2, {false, "fr"}}, {3, {false, "fr"}}}), "en");
    CHECK(r.timeline.documents.empty());
    CHECK(r.removed.language == 3);

    r = filter_documents(with_docs({{1, {true, "en"}}, {2, {false, "fr"}}, {3, {false, "en"}}, {4, {false, "en"}}}), "en");
    CHECK(r.timeline.documents.size() == 2);
    CHECK(r.removed.total() == 2);
}

TEST_CASE("six months is 182 days") {
    CHECK(months_to_days(6) == 182);
    CHECK(months_to_days(12) == 365);
    CHECK(WindowConfig{}.abandonment_days == months_to_days(6));
}

TEST_CASE("activity table") {
    for (const auto& c : cases::activity_table()) {
        CAPTURE(c.name);
        CHECK(classify_activity(c.timeline, c.config) == c.expected);
    }
}

TEST_CASE("activity relative to a reference time") {
    const auto t = cases::make_timeline("u", cases::monthly(cases::range(0, 23)), cases::monthly({23})[0]);
    CHECK(classify_activity(t, {}) == ActivityStatus::Active);
    CHECK(classify_activity(t, {}, cases::utc(2021, 1, 1)) == ActivityStatus::Abandoned);
    CHECK_THROWS_AS(classify_activity(Timeline{}, {}), ClassificationError);
}

TEST_CASE("month activity counts both end months") {
    const auto t = cases::make_timeline("u", {cases::utc(2019, 1, 31), cases::utc(2019, 3, 1)}, cases::utc(2019, 4, 1));
    const auto m = month_activity(t, cases::utc(2019, 1, 31), cases::utc(2019, 4, 1));
    CHECK(m.total_months == 4);
    CHECK(m.empty_months == 2);
}

TEST_CASE("status names round-trip") {
    for (auto s : {ActivityStatus::Active, ActivityStatus::Abandoned, ActivityStatus::Sporadic, ActivityStatus::Truncated,
                   ActivityStatus::BotFlagged})
        CHECK(parse_activity_status(to_string(s)) == s);
    CHECK_THROWS_AS(parse_activity_status("Dormant"), InputError);
}

TEST_CASE("window trimming") {
    const Seconds now = 100 * static_cast<Seconds>(kSecondsPerYear);
    const auto yr = kSecondsPerYear;
    auto t = cases::make_timeline("u", {now - static_cast<Seconds>(0.5 * yr)}, now);
    CHECK_FALSE(trim_to_window(t, 1.0).has_value());

    t = cases::make_timeline("u", {now - static_cast<Seconds>(3 * yr), now - static_cast<Seconds>(1.5 * yr),
                                   now - static_cast<Seconds>(0.5 * yr)},
                             now);
    const auto kept = trim_to_window(t, 2.0);
    REQUIRE(kept.has_value());
    REQUIRE(kept->documents.size() == 2);
    CHECK(kept->documents[0].timestamp == now - static_cast<Seconds>(1.5 * yr));

    for (double T : {1.0, 2.0, 3.0}) CHECK(trim_to_window(t, T).has_value());
    CHECK_THROWS_AS(trim_to_window(t, 0.0), ArgumentError);

    const auto at_ref = trim_to_window(t, 1.0, now - static_cast<Seconds>(1.0 * yr));
    REQUIRE(at_ref.has_value());
    CHECK(at_ref->documents.size() == 1);
}

TEST_CASE("dataset summary") {
    Timeline a, b;
    a.source_label = b.source_label = "journalists";
    a.documents.resize(10);
    b.documents.resize(20);
    const auto s = dataset_summary({a, b}, 1.0);
    REQUIRE(s.size() == 1);
    CHECK(s[0].users == 2);
    CHECK(s[0].avg_documents == 15.0);

    const auto e = dataset_summary({}, 1.0);
    REQUIRE(e.size() == 1);
    CHECK(e[0].users == 0);
    CHECK_FALSE(e[0].avg_documents.has_value());
}

TEST_CASE("window config validation") {
    WindowConfig c;
    c.sporadic_fraction = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.window_years = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
