#pragma once

// Agent abstraction and the broadcast step: every registered agent previews
// each candidate fragment and reports a confidence in [0,1]; the best agent
// per fragment wins. Agents are black boxes behind a small virtual surface.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tess/token.hpp"

namespace tess {

struct AgentDescriptor {
    std::string id;
    std::string intent;
    bool has_preview = true;
};

struct EvaluationResult {
    double confidence = 0.0;  // in [0, 1]
};

class Agent {
public:
    explicit Agent(AgentDescriptor descriptor) : descriptor_(std::move(descriptor)) {
        if (descriptor_.id.empty()) throw std::invalid_argument("agent id must be non-empty");
    }
    virtual ~Agent() = default;

    const AgentDescriptor& descriptor() const { return descriptor_; }
    const std::string& id() const { return descriptor_.id; }
    const std::string& intent() const { return descriptor_.intent; }

    virtual EvaluationResult evaluate(const Utterance& u) const = 0;

private:
    AgentDescriptor descriptor_;
};

/// Test/demo agent with canned confidences keyed by normalized fragment text.
class StubAgent : public Agent {
public:
    StubAgent(AgentDescriptor d, std::map<std::string, double> fixed_scores,
              double default_score = 0.0, std::string marks = default_punctuation())
        : Agent(std::move(d)),
          scores_(std::move(fixed_scores)),
          default_score_(default_score),
          marks_(std::move(marks)) {}

    EvaluationResult evaluate(const Utterance& u) const override {
        auto it = scores_.find(normalize_for_comparison(u.text, marks_));
        return {it != scores_.end() ? it->second : default_score_};
    }

    void set_score(const std::string& text, double score) {
        scores_[normalize_for_comparison(text, marks_)] = score;
    }

private:
    std::map<std::string, double> scores_;
    double default_score_;
    std::string marks_;
};

/// Keyword-match agent: confidence grows with the number of hits and with
/// hit density, so a focused fragment outranks the whole utterance it came
/// from. conf = min(1, weight*hits) * hits/words.
class KeywordAgent : public Agent {
public:
    KeywordAgent(AgentDescriptor d, std::vector<std::string> keywords, double weight_per_hit)
        : Agent(std::move(d)), weight_(weight_per_hit) {
        for (auto& k : keywords) keywords_.push_back(to_lower(k));
    }

    EvaluationResult evaluate(const Utterance& u) const override {
        std::size_t hits = 0, words = 0;
        for (const Token& t : u.tokens) {
            if (!t.is_word()) continue;
            ++words;
            std::string w = to_lower(t.surface);
            if (std::find(keywords_.begin(), keywords_.end(), w) != keywords_.end()) ++hits;
        }
        double h = static_cast<double>(hits);
        double conf = std::min(1.0, weight_ * h) * (h / static_cast<double>(std::max<std::size_t>(1, words)));
        return {std::min(1.0, conf)};
    }

private:
    std::vector<std::string> keywords_;
    double weight_;
};

class Registry {
public:
    Registry() = default;
    Registry(Registry&&) = default;
    Registry& operator=(Registry&&) = default;

    Agent& add(std::unique_ptr<Agent> agent) {
        if (!agent) throw std::invalid_argument("null agent");
        for (const auto& existing : agents_)
            if (existing->id() == agent->id())
                throw std::invalid_argument("duplicate agent id: " + agent->id());
        agents_.push_back(std::move(agent));
        return *agents_.back();
    }

    template <typename T, typename... Args>
    T& emplace(Args&&... args) {
        auto agent = std::make_unique<T>(std::forward<Args>(args)...);
        T& ref = *agent;
        add(std::move(agent));
        return ref;
    }

    bool empty() const { return agents_.empty(); }
    std::size_t size() const { return agents_.size(); }

    const Agent* find(const std::string& id) const {
        for (const auto& a : agents_)
            if (a->id() == id) return a.get();
        return nullptr;
    }

    const std::vector<std::unique_ptr<Agent>>& agents() const { return agents_; }

    /// Sink for fault diagnostics emitted during preview; null silences them.
    void set_diagnostics(std::ostream* sink) { diagnostics_ = sink; }
    std::ostream* diagnostics() const { return diagnostics_; }

private:
    std::vector<std::unique_ptr<Agent>> agents_;
    std::ostream* diagnostics_ = &std::cerr;
};

/// One fragment's winning agent after a broadcast.
struct Binding {
    std::string agent_id;
    std::string intent;
    double confidence = 0.0;
};

/// Asks one agent to preview a fragment. Agents without a preview contract
/// score 0; so do agents that throw or return a non-finite value (with a
/// note to the registry's diagnostics sink). Results are clamped to [0,1].
inline double preview(const Agent& agent, const Utterance& u, std::ostream* diagnostics = nullptr) {
    if (!agent.descriptor().has_preview) return 0.0;
    double confidence = 0.0;
    try {
        confidence = agent.evaluate(u).confidence;
    } catch (const std::exception& e) {
        if (diagnostics)
            *diagnostics << "agent '" << agent.id() << "' failed on \"" << u.text
                         << "\": " << e.what() << "\n";
        return 0.0;
    }
    if (!std::isfinite(confidence)) {
        if (diagnostics)
            *diagnostics << "agent '" << agent.id() << "' returned a non-finite confidence on \""
                         << u.text << "\"\n";
        return 0.0;
    }
    return std::clamp(confidence, 0.0, 1.0);
}

/// Memo for broadcast results within one parse: identical fragments (after
/// normalization) are previewed once.
struct BroadcastCache {
    std::string marks = default_punctuation();
    std::map<std::string, Binding> by_text;
};

/// Sends a fragment to every agent and returns the best binding;
/// ties go to the lexicographically smaller agent id.
inline Binding broadcast(const Registry& registry, const Utterance& u,
                         BroadcastCache* cache = nullptr) {
    if (registry.empty()) throw std::invalid_argument("broadcast requires at least one agent");

    std::string key;
    if (cache) {
        key = normalize_for_comparison(u.text, cache->marks);
        auto it = cache->by_text.find(key);
        if (it != cache->by_text.end()) return it->second;
    }

    Binding best;
    bool first = true;
    for (const auto& agent : registry.agents()) {
        double confidence = preview(*agent, u, registry.diagnostics());
        if (first || confidence > best.confidence ||
            (confidence == best.confidence && agent->id() < best.agent_id)) {
            best = {agent->id(), agent->intent(), confidence};
            first = false;
        }
    }

    if (cache) cache->by_text.emplace(std::move(key), best);
    return best;
}

}  // namespace tess
