#include "egowords/extract.hpp"

#include <array>
#include <cctype>

namespace egowords {

namespace {

struct CodePoint {
    char32_t value;
    std::size_t length; // bytes
};

CodePoint decode(std::string_view s, std::size_t pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    auto cont = [&](std::size_t i) -> int {
        if (pos + i >= s.size()) return -1;
        const auto b = static_cast<unsigned char>(s[pos + i]);
        return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
    };
    if (b0 < 0x80) return {b0, 1};
    if ((b0 & 0xE0) == 0xC0) {
        const int c1 = cont(1);
        if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
    } else if ((b0 & 0xF0) == 0xE0) {
        const int c1 = cont(1), c2 = cont(2);
        if (c1 >= 0 && c2 >= 0) return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
    } else if ((b0 & 0xF8) == 0xF0) {
        const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
        if (c1 >= 0 && c2 >= 0 && c3 >= 0)
            return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), 4};
    }
    return {0xFFFD, 1};
}

bool is_emoji(char32_t c) {
    return (c >= 0x1F000 && c <= 0x1FAFF) || (c >= 0x2600 && c <= 0x27BF) ||
           (c >= 0x2300 && c <= 0x23FF) || (c >= 0x2B00 && c <= 0x2BFF) || c == 0x3030 ||
           c == 0x303D;
}

// Characters that extend an emoji sequence: joiner, variation selector,
// keycap, tag characters.
bool is_emoji_continuation(char32_t c) {
    return c == 0x200D || c == 0xFE0F || c == 0xFE0E || c == 0x20E3 || (c >= 0xE0020 && c <= 0xE007F) ||
           is_emoji(c);
}

bool is_space(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == 0xA0 ||
           c == 0x2028 || c == 0x2029 || (c >= 0x2000 && c <= 0x200A) || c == 0x3000;
}

bool is_punct(char32_t c) {
    if (c < 0x80) return std::ispunct(static_cast<int>(c)) != 0;
    return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) || c == 0xA1 || c == 0xAB ||
           c == 0xBB || c == 0xBF || c == 0xB7 || (c >= 0x3001 && c <= 0x3003) || c == 0xFFFD;
}

bool is_word_char(char32_t c) { return !is_space(c) && !is_punct(c) && !is_emoji(c) && c != 0x200D && c != 0xFE0F; }

// Marker tokens (@name, #tag) continue over letters, digits and underscore.
bool is_marker_char(char32_t c) { return c == '_' || is_word_char(c); }

std::string normalize_quotes(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        const auto cp = decode(text, i);
        if (cp.value == 0x2019 || cp.value == 0x2018 || cp.value == 0x02BC)
            out += '\'';
        else if (cp.value == 0x201C || cp.value == 0x201D)
            out += '"';
        else
            out.append(text.substr(i, cp.length));
        i += cp.length;
    }
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    return true;
}

constexpr std::array<std::string_view, 7> kClitics = {"n't", "'s", "'re", "'ve", "'ll", "'d", "'m"};

void push_word(std::vector<Token>& out, std::string word) {
    for (auto clitic : kClitics) {
        if (word.size() > clitic.size() + 1 && starts_with_ci(std::string_view(word).substr(word.size() - clitic.size()), clitic)) {
            std::string tail = word.substr(word.size() - clitic.size());
            word.resize(word.size() - clitic.size());
            out.push_back({std::move(word), TokenKind::Word});
            out.push_back({std::move(tail), TokenKind::Word});
            return;
        }
    }
    out.push_back({std::move(word), TokenKind::Word});
}

void tokenize_chunk(std::string_view chunk, std::vector<Token>& out) {
    std::size_t pos = 0;
    while (pos < chunk.size()) {
        const auto rest = chunk.substr(pos);
        if (starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") || starts_with_ci(rest, "www.")) {
            std::size_t end = chunk.size();
            while (end > pos && std::string_view(".,;:!?)]\"'").find(chunk[end - 1]) != std::string_view::npos) --end;
            out.push_back({std::string(chunk.substr(pos, end - pos)), TokenKind::Link});
            pos = end;
            continue;
        }

        const auto cp = decode(chunk, pos);
        if (is_emoji(cp.value)) {
            std::size_t end = pos + cp.length;
            while (end < chunk.size()) {
                const auto next = decode(chunk, end);
                if (!is_emoji_continuation(next.value)) break;
                end += next.length;
            }
            out.push_back({std::string(chunk.substr(pos, end - pos)), TokenKind::Emoji});
            pos = end;
            continue;
        }

        if ((cp.value == '@' || cp.value == '#') && pos + 1 < chunk.size() &&
            is_marker_char(decode(chunk, pos + 1).value)) {
            std::size_t end = pos + 1;
            while (end < chunk.size()) {
                const auto next = decode(chunk, end);
                if (!is_marker_char(next.value)) break;
                end += next.length;
            }
            out.push_back({std::string(chunk.substr(pos, end - pos)),
                           cp.value == '@' ? TokenKind::Mention : TokenKind::Hashtag});
            pos = end;
            continue;
        }

        if (is_punct(cp.value) || !is_word_char(cp.value)) {
            std::size_t end = pos + cp.length;
            while (end < chunk.size()) {
                const auto next = decode(chunk, end);
                if (!is_punct(next.value) || next.value == '@' || next.value == '#') break;
                end += next.length;
            }
            out.push_back({std::string(chunk.substr(pos, end - pos)), TokenKind::Punct});
            pos = end;
            continue;
        }

        // Word run. Apostrophes, hyphens and dots stay inside when a word
        // character follows them ("don't", "e-mail", "u.s").
        std::size_t end = pos;
        while (end < chunk.size()) {
            const auto next = decode(chunk, end);
            if (is_word_char(next.value)) {
                end += next.length;
                continue;
            }
            if ((next.value == '\'' || next.value == '-' || next.value == '.') && end + 1 < chunk.size() &&
                is_word_char(decode(chunk, end + 1).value)) {
                end += next.length;
                continue;
            }
            break;
        }
        push_word(out, std::string(chunk.substr(pos, end - pos)));
        pos = end;
    }
}

} // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Word: return "Word";
    case TokenKind::Mention: return "Mention";
    case TokenKind::Hashtag: return "Hashtag";
    case TokenKind::Link: return "Link";
    case TokenKind::Emoji: return "Emoji";
    case TokenKind::Punct: return "Punct";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text) {
    const std::string norm = normalize_quotes(text);
    const std::string_view s = norm;
    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size()) {
            const auto cp = decode(s, pos);
            if (!is_space(cp.value)) break;
            pos += cp.length;
        }
        std::size_t end = pos;
        while (end < s.size()) {
            const auto cp = decode(s, end);
            if (is_space(cp.value)) break;
            end += cp.length;
        }
        if (end > pos) tokenize_chunk(s.substr(pos, end - pos), out);
        pos = end;
    }
    return out;
}

SocialTally& SocialTally::operator+=(const SocialTally& o) {
    mention += o.mention;
    hashtag += o.hashtag;
    link += o.link;
    emoji += o.emoji;
    return *this;
}

StripResult strip_social_tokens(std::vector<Token> tokens) {
    StripResult r;
    r.tokens.reserve(tokens.size());
    for (auto& t : tokens) {
        switch (t.kind) {
        case TokenKind::Mention: ++r.removed.mention; break;
        case TokenKind::Hashtag: ++r.removed.hashtag; break;
        case TokenKind::Link: ++r.removed.link; break;
        case TokenKind::Emoji: ++r.removed.emoji; break;
        default: r.tokens.push_back(std::move(t));
        }
    }
    return r;
}

} // namespace egowords
