#include "egowords/frequency.hpp"

#include "egowords/csv.hpp"
#include "egowords/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace egowords {

std::vector<double> FrequencyTable::log_values() const {
    std::vector<double> v;
    v.reserve(log_freqs.size());
    for (const auto& [w, x] : log_freqs) v.push_back(x);
    return v;
}

std::vector<double> FrequencyTable::values() const {
    std::vector<double> v;
    v.reserve(freqs.size());
    for (const auto& [w, x] : freqs) v.push_back(x);
    return v;
}

FrequencyTable word_frequencies(const LemmaCounts& counts, double window_years) {
    if (!(window_years > 0)) throw ArgumentError("freq", "observation window must be positive");
    FrequencyTable t;
    t.user_id = counts.user_id;
    t.window_years = window_years;
    for (const auto& [lemma, n] : counts.counts) {
        if (n == 0) continue;
        const double f = static_cast<double>(n) / window_years;
        t.counts.emplace(lemma, n);
        t.freqs.emplace(lemma, f);
        t.log_freqs.emplace(lemma, std::log10(f));
    }
    return t;
}

std::vector<CcdfPoint> ccdf(std::span<const double> values) {
    if (values.empty()) throw ArgumentError("freq", "CCDF of an empty set");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<CcdfPoint> out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
        i = j;
    }
    return out;
}

DocumentStats document_stats(const Timeline& timeline, const ExtractionConfig& config) {
    if (timeline.documents.empty())
        throw ArgumentError("freq", "verbosity of an empty timeline (" + timeline.user_id + ")");
    double total = 0.0, distinct = 0.0;
    for (const auto& d : timeline.documents) {
        const auto ex = extract_document(d.text, config);
        total += static_cast<double>(ex.lemmas.size());
        distinct += static_cast<double>(std::set<std::string>(ex.lemmas.begin(), ex.lemmas.end()).size());
    }
    const auto n = static_cast<double>(timeline.documents.size());
    return {total / n, distinct / n};
}

double verbosity(const Timeline& timeline, const ExtractionConfig& config) {
    return document_stats(timeline, config).verbosity;
}

double lexical_richness(const Timeline& timeline, const ExtractionConfig& config) {
    return document_stats(timeline, config).richness;
}

double student_t_975(std::size_t dof) {
    if (dof == 0) throw ArgumentError("stats", "t quantile needs at least one degree of freedom");
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

CiAggregate user_ci_aggregate(std::span<const double> values) {
    if (values.size() < 2) throw ArgumentError("stats", "confidence interval needs n >= 2");
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double half = student_t_975(values.size() - 1) * sd / std::sqrt(n);
    return {mean, mean - half, mean + half, values.size()};
}

void write_frequency_tables(std::ostream& out, const std::vector<FrequencyTable>& tables) {
    csv::write_row(out, {"user_id", "window_years", "lemma", "count", "freq", "log_freq"});
    std::vector<const FrequencyTable*> order;
    for (const auto& t : tables) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* a, auto* b) { return a->user_id < b->user_id; });
    for (const auto* t : order)
        for (const auto& [lemma, f] : t->freqs) {
            const auto c = t->counts.find(lemma);
            csv::write_row(out, {t->user_id, csv::format_double(t->window_years), lemma,
                                 c == t->counts.end() ? "" : std::to_string(c->second),
                                 csv::format_double(f), csv::format_double(t->log_freqs.at(lemma))});
        }
}

namespace {
double parse_double(const std::string& s, const std::string& source) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InputError("freq", source + ": bad number '" + s + "'");
    return v;
}
} // namespace

std::vector<FrequencyTable> read_frequency_tables(std::istream& in, const std::string& source) {
    const auto table = csv::read(in, source);
    const auto cu = table.column("user_id"), ct = table.column("window_years"),
               cl = table.column("lemma"), cc = table.column("count"), cf = table.column("freq"),
               cg = table.column("log_freq");
    std::map<std::string, FrequencyTable> by_user;
    for (const auto& row : table.rows) {
        auto& t = by_user[row[cu]];
        t.user_id = row[cu];
        t.window_years = parse_double(row[ct], source);
        const double f = parse_double(row[cf], source);
        if (!(f > 0)) throw InputError("freq", source + ": non-positive frequency");
        t.freqs[row[cl]] = f;
        t.log_freqs[row[cl]] = parse_double(row[cg], source);
        if (!row[cc].empty()) t.counts[row[cl]] = static_cast<std::uint64_t>(std::stoull(row[cc]));
    }
    std::vector<FrequencyTable> out;
    for (auto& [u, t] : by_user) out.push_back(std::move(t));
    return out;
}

} // namespace egowords
