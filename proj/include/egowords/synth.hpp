#pragma once

#include "egowords/frequency.hpp"
#include "egowords/ingest.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace egowords {

struct PlantedSpec {
    std::size_t k_modes = 1;
    std::vector<double> mode_centers;       // log10 frequency per mode
    std::vector<std::size_t> words_per_mode;
    double jitter_sd = 0.0;                 // log10 units
    double window_years = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    double separation() const; // min pairwise center distance
};

// Centers spaced `separation` apart starting at `lowest_center`, with word
// counts doubling from the highest-frequency mode outwards (base, 2*base, ...).
PlantedSpec make_planted_spec(std::size_t k_modes, double separation, double jitter_sd,
                              std::uint64_t seed, std::size_t base_words = 5,
                              double lowest_center = 1.0, double window_years = 1.0);

struct PlantedUser {
    FrequencyTable table;
    std::map<std::string, std::size_t> true_mode; // lemma -> index into mode_centers
    // Same truth expressed as rank of the mode by descending center.
    std::map<std::string, std::size_t> true_rank;
};

// Counts are round(f * T), at least 2.
PlantedUser generate_planted_user(const PlantedSpec& spec, std::string user_id = "planted");

FrequencyTable generate_zipf_user(std::size_t vocab_size, double exponent,
                                  std::uint64_t total_tokens, double window_years,
                                  std::uint64_t seed, std::string user_id = "zipf");

double powerlaw_inverse_cdf(double alpha, double xmin, double u);
std::vector<double> generate_power_law_samples(double alpha, double xmin, std::size_t n,
                                               std::uint64_t seed);

// A pronounceable lowercase pseudo-word that survives the extraction
// pipeline unchanged (not a stop-word, lemmatizes to itself).
std::string pseudo_word(std::size_t index);

// Spreads each user's lemma occurrences over documents of roughly
// `tokens_per_doc` tokens with timestamps covering the whole window, so the
// timeline passes windowing and activity checks and re-extracts to the same
// counts.
std::vector<Timeline> counts_to_timelines(const std::vector<FrequencyTable>& users,
                                          Seconds download_time, std::uint64_t seed,
                                          std::size_t tokens_per_doc = 20,
                                          const std::string& source_label = "synthetic");

// (user_id, lemma, true_mode_index)
void write_truth(std::ostream& out, const std::vector<PlantedUser>& users);

} // namespace egowords
