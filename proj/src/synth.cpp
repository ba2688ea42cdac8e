#include "egowords/synth.hpp"

#include "egowords/csv.hpp"
#include "egowords/error.hpp"
#include "egowords/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace egowords {

void PlantedSpec::validate() const {
    if (k_modes < 1) throw ArgumentError("simulate", "need at least one mode");
    if (mode_centers.size() != k_modes || words_per_mode.size() != k_modes)
        throw ArgumentError("simulate", "mode centers and word counts must both have k entries");
    if (!(jitter_sd >= 0)) throw ArgumentError("simulate", "jitter must be non-negative");
    if (!(window_years > 0)) throw ArgumentError("simulate", "window years must be positive");
    for (auto w : words_per_mode)
        if (w == 0) throw ArgumentError("simulate", "every mode needs at least one word");
}

double PlantedSpec::separation() const {
    double sep = INFINITY;
    for (std::size_t i = 0; i < mode_centers.size(); ++i)
        for (std::size_t j = i + 1; j < mode_centers.size(); ++j)
            sep = std::min(sep, std::fabs(mode_centers[i] - mode_centers[j]));
    return sep;
}

PlantedSpec make_planted_spec(std::size_t k_modes, double separation, double jitter_sd, std::uint64_t seed,
                              std::size_t base_words, double lowest_center, double window_years) {
    PlantedSpec spec;
    spec.k_modes = k_modes;
    spec.jitter_sd = jitter_sd;
    spec.window_years = window_years;
    spec.seed = seed;
    std::size_t words = base_words;
    for (std::size_t m = 0; m < k_modes; ++m) {
        spec.mode_centers.push_back(lowest_center + separation * static_cast<double>(k_modes - 1 - m));
        spec.words_per_mode.push_back(words);
        words *= 2;
    }
    return spec;
}

std::string pseudo_word(std::size_t index) {
    static constexpr std::string_view consonants = "bdfgklmnprtvz";
    static constexpr std::string_view vowels = "aiou";
    constexpr std::size_t syllables = consonants.size() * vowels.size();
    std::string w;
    for (int s = 0; s < 4; ++s) {
        const std::size_t syl = index % syllables;
        index /= syllables;
        w += consonants[syl % consonants.size()];
        w += vowels[syl / consonants.size()];
    }
    return w;
}

namespace {
FrequencyTable table_from_counts(std::string user_id, double window_years,
                                 const std::map<std::string, std::uint64_t>& counts) {
    LemmaCounts lc;
    lc.user_id = std::move(user_id);
    lc.counts = counts;
    return word_frequencies(lc, window_years);
}
} // namespace

PlantedUser generate_planted_user(const PlantedSpec& spec, std::string user_id) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<std::size_t> rank_of(spec.k_modes);
    std::iota(rank_of.begin(), rank_of.end(), 0);
    std::stable_sort(rank_of.begin(), rank_of.end(),
                     [&](std::size_t a, std::size_t b) { return spec.mode_centers[a] > spec.mode_centers[b]; });
    std::vector<std::size_t> rank(spec.k_modes);
    for (std::size_t r = 0; r < spec.k_modes; ++r) rank[rank_of[r]] = r;

    PlantedUser u;
    std::map<std::string, std::uint64_t> counts;
    std::size_t word_index = 0;
    for (std::size_t m = 0; m < spec.k_modes; ++m) {
        for (std::size_t w = 0; w < spec.words_per_mode[m]; ++w) {
            const double log_f = spec.mode_centers[m] + spec.jitter_sd * rng.normal();
            const double raw = std::round(std::pow(10.0, log_f) * spec.window_years);
            const auto count = static_cast<std::uint64_t>(std::max(2.0, raw));
            const std::string lemma = pseudo_word(word_index++);
            counts[lemma] = count;
            u.true_mode[lemma] = m;
            u.true_rank[lemma] = rank[m];
        }
    }
    std::set<std::uint64_t> distinct;
    for (const auto& [l, c] : counts) distinct.insert(c);
    if (distinct.size() < 2) throw DegenerateInputError("simulate", "planted spec yields fewer than two distinct values");
    u.table = table_from_counts(std::move(user_id), spec.window_years, counts);
    return u;
}

FrequencyTable generate_zipf_user(std::size_t vocab_size, double exponent, std::uint64_t total_tokens,
                                  double window_years, std::uint64_t seed, std::string user_id) {
    if (vocab_size < 2) throw ArgumentError("simulate", "zipf vocabulary needs at least two words");
    if (!(exponent >= 0)) throw ArgumentError("simulate", "zipf exponent must be non-negative");
    std::vector<double> weight(vocab_size);
    double sum = 0.0;
    for (std::size_t r = 0; r < vocab_size; ++r) sum += weight[r] = std::pow(static_cast<double>(r + 1), -exponent);

    std::vector<std::size_t> names(vocab_size);
    std::iota(names.begin(), names.end(), 0);
    Rng rng(seed);
    for (std::size_t i = vocab_size; i > 1; --i) std::swap(names[i - 1], names[rng.below(i)]);

    std::map<std::string, std::uint64_t> counts;
    for (std::size_t r = 0; r < vocab_size; ++r) {
        const auto c = static_cast<std::uint64_t>(std::llround(static_cast<double>(total_tokens) * weight[r] / sum));
        if (c >= 2) counts[pseudo_word(names[r])] = c;
    }
    return table_from_counts(std::move(user_id), window_years, counts);
}

double powerlaw_inverse_cdf(double alpha, double xmin, double u) {
    if (!(alpha > 1)) throw ArgumentError("simulate", "power-law alpha must exceed 1");
    return xmin * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
}

std::vector<double> generate_power_law_samples(double alpha, double xmin, std::size_t n, std::uint64_t seed) {
    if (!(alpha > 1)) throw ArgumentError("simulate", "power-law alpha must exceed 1");
    if (!(xmin > 0)) throw ArgumentError("simulate", "power-law xmin must be positive");
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = powerlaw_inverse_cdf(alpha, xmin, rng.uniform());
    return out;
}

std::vector<Timeline> counts_to_timelines(const std::vector<FrequencyTable>& users, Seconds download_time,
                                          std::uint64_t seed, std::size_t tokens_per_doc,
                                          const std::string& source_label) {
    if (tokens_per_doc == 0) throw ArgumentError("simulate", "documents need at least one token");
    std::vector<Timeline> out;
    for (std::size_t u = 0; u < users.size(); ++u) {
        const auto& t = users[u];
        std::vector<const std::string*> bag;
        for (const auto& [lemma, c] : t.counts)
            for (std::uint64_t i = 0; i < c; ++i) bag.push_back(&lemma);
        Rng rng(derive_seed(seed, u));
        for (std::size_t i = bag.size(); i > 1; --i) std::swap(bag[i - 1], bag[rng.below(i)]);

        Timeline tl;
        tl.user_id = t.user_id;
        tl.download_time = download_time;
        tl.source_label = source_label;
        const std::size_t n_docs = std::max<std::size_t>(1, (bag.size() + tokens_per_doc - 1) / tokens_per_doc);
        const auto span = static_cast<Seconds>(std::ceil(t.window_years * kSecondsPerYear));
        const Seconds start = download_time - span;
        for (std::size_t d = 0; d < n_docs; ++d) {
            Document doc;
            doc.user_id = t.user_id;
            doc.timestamp = n_docs == 1 ? start
                                        : start + static_cast<Seconds>(static_cast<long double>(span) * d / (n_docs - 1));
            const std::size_t b = d * tokens_per_doc, e = std::min(bag.size(), b + tokens_per_doc);
            for (std::size_t i = b; i < e; ++i) {
                if (i > b) doc.text += ' ';
                doc.text += *bag[i];
            }
            tl.documents.push_back(std::move(doc));
        }
        out.push_back(std::move(tl));
    }
    return out;
}

void write_truth(std::ostream& out, const std::vector<PlantedUser>& users) {
    csv::write_row(out, {"user_id", "lemma", "true_mode_index"});
    for (const auto& u : users)
        for (const auto& [lemma, m] : u.true_mode) csv::write_row(out, {u.table.user_id, lemma, std::to_string(m)});
}

} // namespace egowords
