#pragma once

#include "egowords/extract.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace egowords {

struct FrequencyTable {
    std::string user_id;
    double window_years = 1.0;
    std::map<std::string, std::uint64_t> counts;
    std::map<std::string, double> freqs;     // occurrences per year
    std::map<std::string, double> log_freqs; // log10 of freqs

    std::size_t size() const { return freqs.size(); }
    std::vector<double> log_values() const; // in lemma order
    std::vector<double> values() const;
};

FrequencyTable word_frequencies(const LemmaCounts& counts, double window_years);

struct CcdfPoint {
    double value;
    double probability; // fraction of values >= value

    bool operator==(const CcdfPoint&) const = default;
};

std::vector<CcdfPoint> ccdf(std::span<const double> values);

// Mean extracted lemma tokens per document (repeats counted).
double verbosity(const Timeline& timeline, const ExtractionConfig& config);
// Mean distinct lemmas per document.
double lexical_richness(const Timeline& timeline, const ExtractionConfig& config);

struct DocumentStats {
    double verbosity = 0.0;
    double richness = 0.0;
};
// Both statistics from a single extraction pass.
DocumentStats document_stats(const Timeline& timeline, const ExtractionConfig& config);

struct CiAggregate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;
};

// Student-t 95% confidence interval on the mean.
CiAggregate user_ci_aggregate(std::span<const double> values);

// Two-sided 97.5% Student-t quantile for `dof` degrees of freedom.
double student_t_975(std::size_t dof);

void write_frequency_tables(std::ostream& out, const std::vector<FrequencyTable>& tables);
std::vector<FrequencyTable> read_frequency_tables(std::istream& in, const std::string& source);

} // namespace egowords
