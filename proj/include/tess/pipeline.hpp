#pragma once

// Event flow: parse -> score -> select -> sequence -> execute. The scorer is
// the identity on broadcast confidences, the selector keeps bindings at or
// above the threshold, the sequencer replays fragments in textual order, and
// the executor is injected.

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tess/agent.hpp"
#include "tess/split.hpp"
#include "tess/tree.hpp"

namespace tess {

struct PipelineConfig {
    double delta = 0.4;  // minimum confidence for execution
    ScoringMode mode = ScoringMode::average;
    std::size_t max_depth = 3;
    SplitConfig split;
};

struct PlanEntry {
    std::string agent_id;
    Utterance fragment;
    double confidence = 0.0;
};

struct ExecutionPlan {
    std::vector<PlanEntry> entries;
    ParseOutcome provenance;
};

struct AgentResponse {
    std::string agent_id;
    std::string fragment;
    std::string response;
};

class Executor {
public:
    virtual ~Executor() = default;
    virtual AgentResponse execute(const Agent& agent, const Utterance& fragment) = 0;
};

/// Reference executor: agents here stand in for real automations, so the
/// response just acknowledges the routed fragment.
class EchoExecutor : public Executor {
public:
    AgentResponse execute(const Agent& agent, const Utterance& fragment) override {
        return {agent.id(), fragment.text, agent.id() + " handled: " + fragment.text};
    }
};

inline double default_scorer(const EvaluationResult& r) { return r.confidence; }

inline std::vector<OutcomeFragment> default_selector(const std::vector<OutcomeFragment>& fragments,
                                                     double delta) {
    std::vector<OutcomeFragment> selected;
    for (const OutcomeFragment& f : fragments)
        if (f.confidence >= delta) selected.push_back(f);
    return selected;
}

inline std::vector<OutcomeFragment> default_sequencer(std::vector<OutcomeFragment> selected) {
    std::stable_sort(selected.begin(), selected.end(),
                     [](const OutcomeFragment& a, const OutcomeFragment& b) {
                         return a.utterance.origin < b.utterance.origin;
                     });
    return selected;
}

/// Builds, scores and backs up the parse tree for one event. Exposed for
/// callers that want the whole tree (e.g. explanation dumps).
inline NodePtr parse_event_tree(const std::string& text, const Registry& registry,
                                const PipelineConfig& cfg) {
    Utterance u = make_utterance(text, cfg.split.punctuation_marks);
    NodePtr root = build_tree(u, cfg.split, cfg.max_depth);
    score_tree(root, registry, cfg.mode, cfg.split.punctuation_marks);
    return backup(root);
}

inline ParseOutcome parse_event(const std::string& text, const Registry& registry,
                                const PipelineConfig& cfg) {
    return optimal_parse(parse_event_tree(text, registry, cfg));
}

struct EventResult {
    ExecutionPlan plan;
    std::vector<AgentResponse> responses;
    std::string status;          // "ok" or "no capable agent"
    double parse_seconds = 0.0;  // parse + broadcast + backup, not execution
};

/// One full evaluate-and-execute cycle for one user event. The scored tree
/// is handed out on request (for explanation dumps).
inline EventResult handle_event(const std::string& text, const Registry& registry,
                                const PipelineConfig& cfg, Executor* executor = nullptr,
                                NodePtr* tree_out = nullptr) {
    if (registry.empty()) throw std::invalid_argument("handle_event requires a non-empty registry");

    auto started = std::chrono::steady_clock::now();
    NodePtr root = parse_event_tree(text, registry, cfg);
    ParseOutcome outcome = optimal_parse(root);
    auto finished = std::chrono::steady_clock::now();
    if (tree_out) *tree_out = root;

    EventResult result;
    result.parse_seconds = std::chrono::duration<double>(finished - started).count();
    result.plan.provenance = outcome;

    auto sequenced = default_sequencer(default_selector(outcome.fragments, cfg.delta));
    if (sequenced.empty()) {
        result.status = "no capable agent";
        return result;
    }

    result.status = "ok";
    for (OutcomeFragment& f : sequenced) {
        result.plan.entries.push_back({f.agent_id, f.utterance, f.confidence});
        if (!executor) continue;
        const Agent* agent = registry.find(f.agent_id);
        if (!agent) throw std::runtime_error("plan references unknown agent: " + f.agent_id);
        result.responses.push_back(executor->execute(*agent, f.utterance));
    }
    return result;
}

}  // namespace tess
