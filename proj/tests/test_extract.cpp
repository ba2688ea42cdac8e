#include "egowords/error.hpp"
#include "egowords/extract.hpp"
#include "egowords/frequency.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace egowords;

namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& t) {
    std::vector<TokenKind> k;
    for (const auto& x : t) k.push_back(x.kind);
    return k;
}

std::vector<Token> words(std::initializer_list<const char*> w) {
    std::vector<Token> t;
    for (auto s : w) t.push_back({s, TokenKind::Word});
    return t;
}

} // namespace

TEST_CASE("tokenizer kinds") {
    CHECK(tokenize("").empty());
    const auto t = tokenize("The @Patriots say");
    CHECK(t == std::vector<Token>{{"The", TokenKind::Word}, {"@Patriots", TokenKind::Mention}, {"say", TokenKind::Word}});
    CHECK(kinds(tokenize("see https://x.co #go 😀")) ==
          std::vector<TokenKind>{TokenKind::Word, TokenKind::Link, TokenKind::Hashtag, TokenKind::Emoji});
}

TEST_CASE("tokenizer punctuation, clitics and links") {
    const auto t = tokenize("they don’t (really) www.example.org, e-mail's.");
    std::vector<std::string> s;
    for (const auto& x : t) s.push_back(x.surface);
    CHECK(s == std::vector<std::string>{"they", "do", "n't", "(", "really", ")", "www.example.org", ",", "e-mail", "'s", "."});
    CHECK(kinds(tokenize("#30DaysWild @a_b 😀😀")) == std::vector<TokenKind>{TokenKind::Hashtag, TokenKind::Mention, TokenKind::Emoji});
    CHECK(kinds(tokenize("# @ !")) == std::vector<TokenKind>{TokenKind::Punct, TokenKind::Punct, TokenKind::Punct});
}

TEST_CASE("social marker stripping") {
    auto r = strip_social_tokens({{"a", TokenKind::Word}, {"@b", TokenKind::Mention}, {"c", TokenKind::Word}});
    CHECK(r.tokens.size() == 2);
    CHECK(r.removed.mention == 1);

    r = strip_social_tokens({{"#a", TokenKind::Hashtag}, {"#b", TokenKind::Hashtag}, {"#c", TokenKind::Hashtag}});
    CHECK(r.tokens.empty());
    CHECK(r.removed.hashtag == 3);

    std::vector<Token> hundred;
    for (int i = 0; i < 100; ++i) hundred.push_back(i < 7 ? Token{"https://x.co", TokenKind::Link} : Token{"w", TokenKind::Word});
    r = strip_social_tokens(hundred);
    CHECK(100.0 * static_cast<double>(r.removed.link) / 100.0 == doctest::Approx(7.0));
}

TEST_CASE("stop-word removal") {
    ExtractionConfig c;
    CHECK(remove_stopwords(words({"the", "cat"}), c).tokens == words({"cat"}));
    CHECK(remove_stopwords({}, c).tokens.empty());
    CHECK(remove_stopwords(words({"Cat"}), c).tokens == words({"Cat"}));
    const auto r = remove_stopwords(words({"The", "G20", "a", "2", "x"}), c);
    CHECK(r.tokens.empty());
    CHECK(r.stopwords == 2);
    CHECK(r.nonlexical == 3);
}

TEST_CASE("custom stop-word file") {
    const auto path = std::filesystem::temp_directory_path() / "egowords_stop.txt";
    {
        std::ofstream out(path);
        out << "# test list\ncat\n\nDOG\n";
    }
    const auto list = StopwordList::resolve(path.string());
    CHECK(list->contains("cat"));
    CHECK(list->contains("dog"));
    CHECK_FALSE(list->contains("the"));
    CHECK_THROWS_AS(StopwordList::resolve("/nonexistent/list.txt"), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("lemmatizer examples") {
    ExtractionConfig c;
    CHECK(lemmatize("chances", c) == "chance");
    CHECK(lemmatize("ran", c) == "run");
    CHECK(lemmatize("taking", c) == "take");
    CHECK(lemmatize("cat", c) == "cat");
    CHECK(lemmatize("identified", c) == "identify");
    CHECK(lemmatize("Latest", c) == "late");
    CHECK(lemmatize("species", c) == "specie");
    CHECK(lemmatize("leaders", c) == "leader");
    CHECK(lemmatize("days", c) == "day");
    CHECK(lemmatize("stopped", c) == "stop");
    CHECK(lemmatize("making", c) == "make");
    CHECK(lemmatize("boxes", c) == "box");
    CHECK(lemmatize("glass", c) == "glass");
    CHECK(lemmatize("news", c) == "news");
    CHECK(lemmatize("happiest", c) == "happy");
    CHECK(lemmatize("agreed", c) == "agree");
}

TEST_CASE("extraction fixtures") {
    ExtractionConfig c;
    const auto deviations = fixtures::token_lemma_deviations();
    const auto rows = fixtures::token_lemma_rows();
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CAPTURE(row.row);
        const auto got = extract_document(row.text, c).lemmas;
        const auto dev = deviations.find(row.row);
        if (dev == deviations.end()) {
            CHECK(got == row.expected);
        } else {
            CHECK(got == dev->second);
            CHECK(got != row.expected);
        }
    }
}

TEST_CASE("lemma counts and the hapax filter") {
    ExtractionConfig c;
    const auto rows = fixtures::token_lemma_rows();
    Timeline t;
    t.user_id = "u";
    t.documents.push_back(Document{"u", 1, rows[2].text, false, "en", {}, {}});
    const auto counts = count_lemmas(t, c);
    CHECK(counts.counts == std::map<std::string, std::uint64_t>{{"specie", 2}});
    CHECK(counts.total_word_tokens == 14);
    CHECK(counts.removed.hapax == 12);

    Timeline empty;
    CHECK(count_lemmas(empty, c).counts.empty());

    Timeline two;
    two.documents.push_back(Document{"u", 1, "garden party", false, "en", {}, {}});
    two.documents.push_back(Document{"u", 2, "my garden", false, "en", {}, {}});
    CHECK(count_lemmas(two, c).counts == std::map<std::string, std::uint64_t>{{"garden", 2}});
}

TEST_CASE("lemma counts file round-trip") {
    LemmaCounts a{"u1", {{"cat", 3}, {"a,b", 2}}, 0, {}};
    LemmaCounts b{"u2", {{"dog", 5}}, 0, {}};
    std::stringstream io;
    write_lemma_counts(io, {a, b});
    const auto back = read_lemma_counts(io, "mem");
    REQUIRE(back.size() == 2);
    CHECK(back[0].counts == a.counts);
    CHECK(back[1].user_id == "u2");
}

TEST_CASE("extraction config validation") {
    ExtractionConfig c;
    c.min_count = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.lemmatizer_id = "spacy";
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
