#pragma once

// Tokenization and text normalization primitives shared by the splitter,
// the broadcast cache and the evaluation harness.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tess {

enum class TokenKind { word, punctuation };

struct Token {
    std::string surface;
    std::size_t index = 0;
    TokenKind kind = TokenKind::word;

    bool is_word() const { return kind == TokenKind::word; }

    friend bool operator==(const Token&, const Token&) = default;
};

/// Punctuation marks that act as split anchors unless overridden.
inline const std::string& default_punctuation() {
    static const std::string marks = ",.;?!";
    return marks;
}

inline bool is_mark(char c, const std::string& marks) {
    return marks.find(c) != std::string::npos;
}

inline std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

inline bool is_blank(std::string_view text) {
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

/// Splits on whitespace; leading/trailing characters from `marks` become
/// their own punctuation tokens. Word case is preserved. Blank text yields
/// an empty sequence.
inline std::vector<Token> tokenize(std::string_view text,
                                   const std::string& marks = default_punctuation()) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) break;

        std::string_view chunk = text.substr(pos, end - pos);
        std::size_t lead = 0;
        while (lead < chunk.size() && is_mark(chunk[lead], marks)) ++lead;
        std::size_t trail = chunk.size();
        while (trail > lead && is_mark(chunk[trail - 1], marks)) --trail;

        auto push = [&tokens](std::string surface, TokenKind kind) {
            tokens.push_back(Token{std::move(surface), tokens.size(), kind});
        };
        for (std::size_t i = 0; i < lead; ++i) push(std::string(1, chunk[i]), TokenKind::punctuation);
        if (trail > lead) push(std::string(chunk.substr(lead, trail - lead)), TokenKind::word);
        for (std::size_t i = trail; i < chunk.size(); ++i)
            push(std::string(1, chunk[i]), TokenKind::punctuation);

        pos = end;
    }
    return tokens;
}

/// Words are joined by single spaces; punctuation attaches to the text on
/// its left, the way it appeared in natural writing.
inline std::string render_tokens(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& tok : tokens) {
        if (!out.empty() && tok.is_word()) out.push_back(' ');
        out += tok.surface;
    }
    return out;
}

// A candidate utterance: verbatim text plus its token sequence. `origin`
// anchors the fragment's first token relative to the root utterance and is
// what the sequencer orders by.
struct Utterance {
    std::string text;
    std::vector<Token> tokens;
    std::size_t origin = 0;

    bool empty() const { return tokens.empty(); }
};

inline Utterance make_utterance(std::string text,
                                const std::string& marks = default_punctuation(),
                                std::size_t origin = 0) {
    Utterance u;
    u.tokens = tokenize(text, marks);
    u.text = std::move(text);
    u.origin = origin;
    return u;
}

/// Builds a fragment from tokens taken out of a parent utterance; indices
/// are re-assigned to stay contiguous from 0.
inline Utterance utterance_from_tokens(std::vector<Token> tokens, std::size_t origin = 0) {
    Utterance u;
    u.text = render_tokens(tokens);
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
    u.tokens = std::move(tokens);
    u.origin = origin;
    return u;
}

inline std::size_t word_count(const Utterance& u) {
    std::size_t n = 0;
    for (const Token& t : u.tokens)
        if (t.is_word()) ++n;
    return n;
}

/// Comparison normalization: lowercase, configured punctuation removed,
/// whitespace runs collapsed to single spaces, trimmed. Idempotent.
inline std::string normalize_for_comparison(std::string_view text,
                                            const std::string& marks = default_punctuation()) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_mark(c, marks)) continue;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace tess
