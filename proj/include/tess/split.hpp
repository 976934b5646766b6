#pragma once

// Split-point enumeration: single-token conjunctions, double-word
// conjunction pairs, punctuation marks, and shallow coordination
// distribution. Each SplitPoint applies one split; recursion over the
// resulting fragments happens in the parse tree.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tess/token.hpp"

namespace tess {

enum class SplitKind { single_conjunction, double_word, punctuation, dependency };

inline const char* to_string(SplitKind kind) {
    switch (kind) {
        case SplitKind::single_conjunction: return "single_conjunction";
        case SplitKind::double_word: return "double_word";
        case SplitKind::punctuation: return "punctuation";
        case SplitKind::dependency: return "dependency";
    }
    return "unknown";
}

struct SplitPoint {
    SplitKind kind = SplitKind::single_conjunction;
    std::vector<std::size_t> anchor_indices;  // token indices consumed by the split
    std::vector<Utterance> fragments;         // always >= 2

    std::size_t first_anchor() const {
        return anchor_indices.empty() ? 0 : anchor_indices.front();
    }
};

struct SplitConfig {
    std::set<std::string> single_conjunctions = {"and", "then", "before", "after",
                                                 "also", "plus", "if", "when"};
    std::set<std::pair<std::string, std::string>> double_word_pairs = {
        {"first", "then"}, {"first", "second"}, {"first", "after"}};
    std::string punctuation_marks = ",.;?!";
    bool enable_dependency = true;
    std::size_t min_fragment_words = 2;
    // Words that terminate the coordinated element and start the shared
    // suffix in a dependency split.
    std::set<std::string> suffix_markers = {"to", "from", "in", "on", "at",
                                            "for", "with", "by", "of", "about"};

    bool is_conjunction(const Token& t) const {
        return t.is_word() && single_conjunctions.count(to_lower(t.surface)) > 0;
    }
    bool is_suffix_marker(const Token& t) const {
        return t.is_word() && suffix_markers.count(to_lower(t.surface)) > 0;
    }
};

namespace detail {

inline bool has_real_content(const std::vector<Token>& tokens) {
    return std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word(); });
}

inline std::size_t count_words(const std::vector<Token>& tokens) {
    std::size_t n = 0;
    for (const Token& t : tokens)
        if (t.is_word()) ++n;
    return n;
}

inline std::vector<Token> slice(const std::vector<Token>& tokens, std::size_t begin,
                                std::size_t end) {
    return std::vector<Token>(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                              tokens.begin() + static_cast<std::ptrdiff_t>(end));
}

inline Utterance fragment_from(const Utterance& parent, std::vector<Token> tokens) {
    std::size_t origin = parent.origin;
    if (!tokens.empty()) origin += tokens.front().index;
    return utterance_from_tokens(std::move(tokens), origin);
}

// Two-way partition around a set of consumed anchor indices: fragment 1 is
// everything before `cut`, fragment 2 everything after, minus the anchors.
inline std::optional<SplitPoint> partition_split(const Utterance& u, SplitKind kind,
                                                 std::vector<std::size_t> anchors,
                                                 std::size_t cut,
                                                 std::size_t min_words) {
    std::vector<Token> left, right;
    for (const Token& t : u.tokens) {
        if (std::find(anchors.begin(), anchors.end(), t.index) != anchors.end()) continue;
        (t.index < cut ? left : right).push_back(t);
    }
    if (!has_real_content(left) || !has_real_content(right)) return std::nullopt;
    if (count_words(left) < min_words || count_words(right) < min_words) return std::nullopt;

    SplitPoint sp;
    sp.kind = kind;
    sp.anchor_indices = std::move(anchors);
    sp.fragments.push_back(fragment_from(u, std::move(left)));
    sp.fragments.push_back(fragment_from(u, std::move(right)));
    return sp;
}

inline bool starts_with_determiner(const std::vector<Token>& tokens) {
    for (const Token& t : tokens) {
        if (!t.is_word()) continue;
        std::string w = to_lower(t.surface);
        return w == "a" || w == "an" || w == "the";
    }
    return false;
}

}  // namespace detail

/// Splits at a configured punctuation token, removing the mark. Throws when
/// the mark has no word tokens on one of its sides (e.g. sentence-final) or
/// a side falls below min_fragment_words.
inline SplitPoint apply_punctuation_split(const Utterance& u, std::size_t mark_index,
                                          const SplitConfig& cfg) {
    if (mark_index >= u.tokens.size()) throw std::invalid_argument("mark index out of range");
    const Token& mark = u.tokens[mark_index];
    if (mark.is_word() || mark.surface.size() != 1 || !is_mark(mark.surface[0], cfg.punctuation_marks))
        throw std::invalid_argument("token is not a configured punctuation mark");

    auto sp = detail::partition_split(u, SplitKind::punctuation, {mark_index}, mark_index,
                                      cfg.min_fragment_words);
    if (!sp) throw std::invalid_argument("punctuation mark has no splittable fragment on each side");
    return *sp;
}

/// Shallow coordination distribution: matches <prefix> N1 conj N2 <suffix>
/// where N1/N2 are short noun-ish runs around the conjunction, and emits
/// "<prefix> N1 <suffix>" + "<prefix> N2 <suffix>". Returns nullopt when the
/// pattern does not apply.
inline std::optional<SplitPoint> distribute_coordination(const Utterance& u,
                                                         std::size_t conj_index,
                                                         const SplitConfig& cfg) {
    if (conj_index >= u.tokens.size() || !cfg.is_conjunction(u.tokens[conj_index]))
        throw std::invalid_argument("token is not a single-token conjunction");

    const auto& toks = u.tokens;
    // Coordinated element on the right: up to two plain words, terminated by
    // the end, punctuation, a suffix marker or another conjunction.
    std::size_t right_end = conj_index + 1;
    while (right_end < toks.size() && toks[right_end].is_word() &&
           !cfg.is_suffix_marker(toks[right_end]) && !cfg.is_conjunction(toks[right_end])) {
        ++right_end;
        if (right_end - conj_index - 1 > 2) return std::nullopt;
    }
    std::size_t n = right_end - conj_index - 1;
    if (n < 1) return std::nullopt;

    // Mirror run on the left; boundary words there mean the pattern is off.
    if (conj_index < n) return std::nullopt;
    std::size_t left_begin = conj_index - n;
    for (std::size_t i = left_begin; i < conj_index; ++i) {
        if (!toks[i].is_word() || cfg.is_suffix_marker(toks[i]) || cfg.is_conjunction(toks[i]))
            return std::nullopt;
    }

    auto prefix = detail::slice(toks, 0, left_begin);
    if (!detail::has_real_content(prefix)) return std::nullopt;
    auto suffix = detail::slice(toks, right_end, toks.size());

    auto assemble = [&](std::size_t begin, std::size_t end) {
        std::vector<Token> frag = prefix;
        for (std::size_t i = begin; i < end; ++i) frag.push_back(toks[i]);
        frag.insert(frag.end(), suffix.begin(), suffix.end());
        return detail::fragment_from(u, std::move(frag));
    };

    SplitPoint sp;
    sp.kind = SplitKind::dependency;
    sp.anchor_indices = {conj_index};
    sp.fragments.push_back(assemble(left_begin, conj_index));
    sp.fragments.push_back(assemble(conj_index + 1, right_end));
    return sp;
}

namespace detail {

inline void append_double_word_splits(const Utterance& u, const SplitConfig& cfg,
                                      std::vector<SplitPoint>& out) {
    for (const auto& [head, tail] : cfg.double_word_pairs) {
        std::size_t head_idx = u.tokens.size();
        std::size_t tail_idx = u.tokens.size();
        for (const Token& t : u.tokens) {
            if (!t.is_word()) continue;
            std::string w = to_lower(t.surface);
            if (head_idx == u.tokens.size()) {
                if (w == head) head_idx = t.index;
            } else if (w == tail) {
                tail_idx = t.index;
                break;
            }
        }
        if (tail_idx == u.tokens.size()) continue;

        std::vector<std::size_t> anchors = {head_idx, tail_idx};
        // ", and then" — the conjunction riding just before the second pair
        // member belongs to the connective, not to a fragment.
        if (tail_idx > 0 && cfg.is_conjunction(u.tokens[tail_idx - 1]) && tail_idx - 1 != head_idx)
            anchors.push_back(tail_idx - 1);
        std::sort(anchors.begin(), anchors.end());

        auto sp = partition_split(u, SplitKind::double_word, anchors, tail_idx, 1);
        if (!sp) continue;
        out.push_back(*sp);

        if (!cfg.enable_dependency) continue;
        // Gapped-verb variant: "First send an email and then a Slack message"
        // reads as "send an email" + "send a Slack message". When the second
        // fragment opens with a bare determiner its verb was elided; copy the
        // first word of the left fragment across. Shared token, so this is a
        // dependency-kind split.
        const auto& left = sp->fragments[0];
        const auto& right = sp->fragments[1];
        if (word_count(left) < 2 || !starts_with_determiner(right.tokens)) continue;
        auto lead = std::find_if(left.tokens.begin(), left.tokens.end(),
                                 [](const Token& t) { return t.is_word(); });
        std::vector<Token> gapped;
        gapped.push_back(*lead);
        gapped.insert(gapped.end(), right.tokens.begin(), right.tokens.end());

        SplitPoint dep;
        dep.kind = SplitKind::dependency;
        dep.anchor_indices = sp->anchor_indices;
        dep.fragments.push_back(left);
        dep.fragments.push_back(utterance_from_tokens(std::move(gapped), right.origin));
        out.push_back(std::move(dep));
    }
}

}  // namespace detail

/// Enumerates every applicable split of `u`, ordered left-to-right by first
/// anchor index with kind order single_conjunction < double_word <
/// punctuation < dependency on ties. Deterministic; empty result means a
/// single-intent candidate.
inline std::vector<SplitPoint> find_split_points(const Utterance& u, const SplitConfig& cfg) {
    std::vector<SplitPoint> splits;

    for (const Token& t : u.tokens) {
        if (cfg.is_conjunction(t)) {
            auto sp = detail::partition_split(u, SplitKind::single_conjunction, {t.index},
                                              t.index, cfg.min_fragment_words);
            if (sp) splits.push_back(std::move(*sp));
        }
    }

    detail::append_double_word_splits(u, cfg, splits);

    for (const Token& t : u.tokens) {
        if (t.is_word() || t.surface.size() != 1 || !is_mark(t.surface[0], cfg.punctuation_marks))
            continue;
        auto sp = detail::partition_split(u, SplitKind::punctuation, {t.index}, t.index,
                                          cfg.min_fragment_words);
        if (sp) splits.push_back(std::move(*sp));
    }

    if (cfg.enable_dependency) {
        for (const Token& t : u.tokens) {
            if (!cfg.is_conjunction(t)) continue;
            if (auto sp = distribute_coordination(u, t.index, cfg)) splits.push_back(std::move(*sp));
        }
    }

    std::stable_sort(splits.begin(), splits.end(), [](const SplitPoint& a, const SplitPoint& b) {
        if (a.first_anchor() != b.first_anchor()) return a.first_anchor() < b.first_anchor();
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return splits;
}

}  // namespace tess
