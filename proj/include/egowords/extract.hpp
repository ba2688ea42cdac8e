#pragma once

#include "egowords/ingest.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace egowords {

enum class TokenKind { Word, Mention, Hashtag, Link, Emoji, Punct };

std::string_view to_string(TokenKind kind);

struct Token {
    std::string surface;
    TokenKind kind = TokenKind::Word;

    bool operator==(const Token&) const = default;
};

// Whitespace segmentation with kind classification. Surrounding punctuation
// is split off as Punct tokens, curly apostrophes are normalized and English
// clitics ("n't", "'s", "'re", ...) become separate Word tokens.
std::vector<Token> tokenize(std::string_view text);

struct SocialTally {
    std::size_t mention = 0;
    std::size_t hashtag = 0;
    std::size_t link = 0;
    std::size_t emoji = 0;

    std::size_t total() const { return mention + hashtag + link + emoji; }
    SocialTally& operator+=(const SocialTally& o);
};

struct StripResult {
    std::vector<Token> tokens;
    SocialTally removed;
};

StripResult strip_social_tokens(std::vector<Token> tokens);

// A named, versioned set of lowercase stop-words.
class StopwordList {
public:
    StopwordList(std::string id, std::set<std::string, std::less<>> words);

    // The shipped English list ("builtin").
    static std::shared_ptr<const StopwordList> builtin();
    // One word per line; '#' starts a comment.
    static std::shared_ptr<const StopwordList> from_file(const std::string& path);
    // "builtin" or a file path.
    static std::shared_ptr<const StopwordList> resolve(std::string_view id_or_path);

    const std::string& id() const { return id_; }
    bool contains(std::string_view lowercase_word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::string id_;
    std::set<std::string, std::less<>> words_;
};

inline constexpr std::string_view kBuiltinLemmatizerId = "builtin-en-v1";

struct ExtractionConfig {
    std::shared_ptr<const StopwordList> stopwords = StopwordList::builtin();
    std::string lemmatizer_id{kBuiltinLemmatizerId};
    std::uint64_t min_count = 2;
    bool lowercase = true;

    void validate() const;
};

// Numerals, tokens with digits, single characters and punctuation carry no
// lexical content and are dropped alongside stop-words.
bool is_lexical(const Token& token);

struct StopwordResult {
    std::vector<Token> tokens;
    std::size_t stopwords = 0;
    std::size_t nonlexical = 0;
};

StopwordResult remove_stopwords(std::vector<Token> tokens, const ExtractionConfig& config);

// Rule and lookup lemmatizer: irregular forms come from an exception table,
// regular inflections from suffix rules. The result is lowercase.
std::string lemmatize(std::string_view word, const ExtractionConfig& config);

struct ExtractionTally {
    std::size_t tokens = 0; // tokenizer output size
    SocialTally social;
    std::size_t nonlexical = 0;
    std::size_t stopword = 0;
    std::size_t hapax = 0;

    ExtractionTally& operator+=(const ExtractionTally& o);
};

struct DocumentExtraction {
    std::vector<std::string> lemmas; // in text order, with repeats
    ExtractionTally tally;
};

// Full per-document pipeline, before any min-count filter. Lemmas that are
// themselves stop-words (e.g. "says" -> "say") are dropped as stop-words.
DocumentExtraction extract_document(std::string_view text, const ExtractionConfig& config);

struct LemmaCounts {
    std::string user_id;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_word_tokens = 0; // lemma occurrences before the min-count filter
    ExtractionTally removed;
};

LemmaCounts count_lemmas(const Timeline& timeline, const ExtractionConfig& config);

// Applies the min-count filter to raw summed counts.
void apply_min_count(LemmaCounts& counts, std::uint64_t min_count);

// Line-delimited (user_id, lemma, count) CSV.
void write_lemma_counts(std::ostream& out, const std::vector<LemmaCounts>& all);
std::vector<LemmaCounts> read_lemma_counts(std::istream& in, const std::string& source);

} // namespace egowords
