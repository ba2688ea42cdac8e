#include "egowords/extract.hpp"

#include "egowords/csv.hpp"
#include "egowords/error.hpp"

#include <cctype>
#include <charconv>

namespace egowords {

namespace {

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

bool is_lexical(const Token& token) {
    if (token.kind != TokenKind::Word) return false;
    if (codepoint_count(token.surface) < 2) return false;
    bool letter = false;
    for (unsigned char c : token.surface) {
        if (std::isdigit(c)) return false;
        if (std::isalpha(c) || c >= 0x80) letter = true;
    }
    return letter;
}

ExtractionTally& ExtractionTally::operator+=(const ExtractionTally& o) {
    tokens += o.tokens;
    social += o.social;
    nonlexical += o.nonlexical;
    stopword += o.stopword;
    hapax += o.hapax;
    return *this;
}

StopwordResult remove_stopwords(std::vector<Token> tokens, const ExtractionConfig& config) {
    config.validate();
    StopwordResult r;
    r.tokens.reserve(tokens.size());
    for (auto& t : tokens) {
        if (t.kind == TokenKind::Word && config.stopwords->contains(ascii_lower(t.surface)))
            ++r.stopwords;
        else if (!is_lexical(t))
            ++r.nonlexical;
        else
            r.tokens.push_back(std::move(t));
    }
    return r;
}

DocumentExtraction extract_document(std::string_view text, const ExtractionConfig& config) {
    DocumentExtraction out;
    auto tokens = tokenize(text);
    out.tally.tokens = tokens.size();
    auto stripped = strip_social_tokens(std::move(tokens));
    out.tally.social = stripped.removed;
    auto kept = remove_stopwords(std::move(stripped.tokens), config);
    out.tally.stopword = kept.stopwords;
    out.tally.nonlexical = kept.nonlexical;
    out.lemmas.reserve(kept.tokens.size());
    for (const auto& t : kept.tokens) {
        std::string lemma = lemmatize(t.surface, config);
        if (config.stopwords->contains(ascii_lower(lemma)))
            ++out.tally.stopword;
        else if (!is_lexical(Token{lemma, TokenKind::Word}))
            ++out.tally.nonlexical;
        else
            out.lemmas.push_back(std::move(lemma));
    }
    return out;
}

void apply_min_count(LemmaCounts& counts, std::uint64_t min_count) {
    for (auto it = counts.counts.begin(); it != counts.counts.end();) {
        if (it->second < min_count) {
            counts.removed.hapax += it->second;
            it = counts.counts.erase(it);
        } else {
            ++it;
        }
    }
}

LemmaCounts count_lemmas(const Timeline& timeline, const ExtractionConfig& config) {
    config.validate();
    LemmaCounts lc;
    lc.user_id = timeline.user_id;
    for (const auto& d : timeline.documents) {
        auto ex = extract_document(d.text, config);
        lc.removed += ex.tally;
        lc.total_word_tokens += ex.lemmas.size();
        for (auto& l : ex.lemmas) ++lc.counts[std::move(l)];
    }
    apply_min_count(lc, config.min_count);
    return lc;
}

void write_lemma_counts(std::ostream& out, const std::vector<LemmaCounts>& all) {
    csv::write_row(out, {"user_id", "lemma", "count"});
    std::vector<const LemmaCounts*> order;
    for (const auto& lc : all) order.push_back(&lc);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* a, auto* b) { return a->user_id < b->user_id; });
    for (const auto* lc : order)
        for (const auto& [lemma, n] : lc->counts)
            csv::write_row(out, {lc->user_id, lemma, std::to_string(n)});
}

std::vector<LemmaCounts> read_lemma_counts(std::istream& in, const std::string& source) {
    const auto table = csv::read(in, source);
    const auto cu = table.column("user_id"), cl = table.column("lemma"), cc = table.column("count");
    std::map<std::string, LemmaCounts> by_user;
    for (const auto& row : table.rows) {
        std::uint64_t n = 0;
        const auto& s = row[cc];
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc{} || p != s.data() + s.size() || n == 0)
            throw InputError("extract", source + ": bad count '" + s + "'");
        auto& lc = by_user[row[cu]];
        lc.user_id = row[cu];
        lc.counts[row[cl]] += n;
        lc.total_word_tokens += n;
    }
    std::vector<LemmaCounts> out;
    for (auto& [u, lc] : by_user) out.push_back(std::move(lc));
    return out;
}

} // namespace egowords
