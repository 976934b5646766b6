#pragma once

// Parse tree over split states. Each node is an ordered set of candidate
// fragments; children replace one candidate with its split fragments.
// Broadcast scores are attached per candidate, aggregated per node, then
// backed up max-wise; the best-scoring reachable state is the parse.

#include <deque>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tess/agent.hpp"
#include "tess/split.hpp"
#include "tess/token.hpp"

namespace tess {

enum class ScoringMode { average, joint };

inline const char* to_string(ScoringMode mode) {
    return mode == ScoringMode::average ? "average" : "joint";
}

inline ScoringMode parse_scoring_mode(const std::string& name) {
    if (name == "average") return ScoringMode::average;
    if (name == "joint") return ScoringMode::joint;
    throw std::invalid_argument("unknown scoring mode: " + name);
}

struct ParseNode;
using NodePtr = std::shared_ptr<ParseNode>;

struct ChildEdge {
    SplitPoint split;             // the split that produced the child
    std::size_t candidate_index;  // which parent candidate it replaced
    NodePtr child;
};

struct ParseNode {
    std::vector<Utterance> candidates;            // the state, in origin order
    std::vector<std::optional<Binding>> bindings;  // parallel to candidates
    std::optional<double> eval_score;
    std::optional<double> backed_up_score;
    std::vector<ChildEdge> children;
    std::size_t depth = 0;  // minimum number of splits from the root
};

namespace detail {

inline std::string state_key(const std::vector<Utterance>& candidates, const std::string& marks) {
    std::string key;
    for (const Utterance& c : candidates) {
        if (!key.empty()) key += '\x1f';
        key += normalize_for_comparison(c.text, marks);
    }
    return key;
}

// Parent candidates with candidate `index` replaced by the split fragments,
// duplicates (post-normalization) collapsed to their first occurrence.
inline std::vector<Utterance> child_candidates(const std::vector<Utterance>& parent,
                                               std::size_t index, const SplitPoint& split,
                                               const std::string& marks) {
    std::vector<Utterance> expanded;
    expanded.reserve(parent.size() + split.fragments.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        if (i == index)
            expanded.insert(expanded.end(), split.fragments.begin(), split.fragments.end());
        else
            expanded.push_back(parent[i]);
    }
    std::vector<Utterance> unique;
    std::unordered_set<std::string> seen;
    for (Utterance& c : expanded)
        if (seen.insert(normalize_for_comparison(c.text, marks)).second)
            unique.push_back(std::move(c));
    return unique;
}

template <typename Fn>
inline void for_each_node(const NodePtr& root, Fn&& fn) {
    std::unordered_set<const ParseNode*> seen;
    std::deque<NodePtr> queue{root};
    seen.insert(root.get());
    while (!queue.empty()) {
        NodePtr node = queue.front();
        queue.pop_front();
        fn(node);
        for (const ChildEdge& edge : node->children)
            if (seen.insert(edge.child.get()).second) queue.push_back(edge.child);
    }
}

}  // namespace detail

/// Expands every state reachable from the whole utterance in at most
/// max_depth splits. States are identified by their normalized candidate
/// texts and built once, at their minimum depth; later paths to the same
/// state share the node.
inline NodePtr build_tree(const Utterance& u, const SplitConfig& cfg, std::size_t max_depth = 3) {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
    if (u.empty() || is_blank(u.text)) throw std::invalid_argument("cannot parse a blank utterance");

    auto root = std::make_shared<ParseNode>();
    root->candidates = {u};
    root->bindings.resize(1);

    std::map<std::string, NodePtr> memo;
    const std::string root_key = detail::state_key(root->candidates, cfg.punctuation_marks);
    memo.emplace(root_key, root);

    std::deque<NodePtr> queue{root};
    while (!queue.empty()) {
        NodePtr node = queue.front();
        queue.pop_front();
        if (node->depth >= max_depth) continue;

        const std::string node_key = detail::state_key(node->candidates, cfg.punctuation_marks);
        for (std::size_t i = 0; i < node->candidates.size(); ++i) {
            for (SplitPoint& sp : find_split_points(node->candidates[i], cfg)) {
                auto candidates =
                    detail::child_candidates(node->candidates, i, sp, cfg.punctuation_marks);
                std::string key = detail::state_key(candidates, cfg.punctuation_marks);
                if (key == node_key) continue;

                NodePtr child;
                auto it = memo.find(key);
                if (it != memo.end()) {
                    child = it->second;
                } else {
                    child = std::make_shared<ParseNode>();
                    child->candidates = std::move(candidates);
                    child->bindings.resize(child->candidates.size());
                    child->depth = node->depth + 1;
                    memo.emplace(std::move(key), child);
                    queue.push_back(child);
                }
                node->children.push_back(ChildEdge{std::move(sp), i, std::move(child)});
            }
        }
    }
    return root;
}

/// Aggregates a node's per-candidate best confidences: mean under average
/// mode, product under joint mode. Requires every candidate to carry a
/// broadcast binding; stores and returns the result.
inline double score_node(ParseNode& n, ScoringMode mode) {
    if (n.candidates.empty()) throw std::invalid_argument("node has no candidates");
    for (const auto& b : n.bindings)
        if (!b) throw std::invalid_argument("score_node requires a binding per candidate");

    double score = mode == ScoringMode::joint ? 1.0 : 0.0;
    for (const auto& b : n.bindings) {
        if (mode == ScoringMode::joint)
            score *= b->confidence;
        else
            score += b->confidence;
    }
    if (mode == ScoringMode::average) score /= static_cast<double>(n.bindings.size());
    n.eval_score = score;
    return score;
}

/// Broadcasts every candidate of every node and scores each node. Fragments
/// that normalize identically are previewed once per call.
inline void score_tree(const NodePtr& root, const Registry& registry, ScoringMode mode,
                       const std::string& marks = default_punctuation()) {
    BroadcastCache cache;
    cache.marks = marks;
    detail::for_each_node(root, [&](const NodePtr& node) {
        for (std::size_t i = 0; i < node->candidates.size(); ++i)
            node->bindings[i] = broadcast(registry, node->candidates[i], &cache);
        score_node(*node, mode);
    });
}

/// Backs scores up the tree: a node's backed-up score is the max of its own
/// evaluation and its children's backed-up scores. Returns the root.
inline NodePtr backup(const NodePtr& root) {
    if (!root) throw std::invalid_argument("backup requires a tree");

    // Post-order over the DAG, iteratively; shared children resolve once.
    std::unordered_set<const ParseNode*> done;
    std::vector<std::pair<NodePtr, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (done.count(node.get())) continue;
        if (!node->eval_score) throw std::invalid_argument("backup requires scored nodes");
        if (!expanded) {
            stack.push_back({node, true});
            for (const ChildEdge& edge : node->children)
                if (!done.count(edge.child.get())) stack.push_back({edge.child, false});
            continue;
        }
        double best = *node->eval_score;
        for (const ChildEdge& edge : node->children)
            best = std::max(best, *edge.child->backed_up_score);
        node->backed_up_score = best;
        done.insert(node.get());
    }
    return root;
}

struct OutcomeFragment {
    Utterance utterance;
    std::string agent_id;
    std::string intent;
    double confidence = 0.0;
};

struct ParseOutcome {
    std::vector<OutcomeFragment> fragments;  // original-text order
    double score = 0.0;
    std::size_t depth = 0;  // splits applied
};

/// Picks the state that justifies the root's backed-up score: the shallowest
/// node whose own evaluation equals it, ties broken by fewer fragments, then
/// left-most discovery order.
inline NodePtr optimal_node(const NodePtr& root) {
    if (!root) throw std::invalid_argument("optimal_parse requires a tree");
    if (!root->backed_up_score) throw std::invalid_argument("optimal_parse requires a backed-up tree");
    const double target = *root->backed_up_score;

    NodePtr best;
    detail::for_each_node(root, [&](const NodePtr& node) {
        if (!node->eval_score || *node->eval_score != target) return;
        if (!best || node->depth < best->depth ||
            (node->depth == best->depth && node->candidates.size() < best->candidates.size()))
            best = node;  // BFS order already favors the left-most at equal keys
    });
    if (!best) throw std::runtime_error("no node realizes the backed-up score");
    return best;
}

inline ParseOutcome optimal_parse(const NodePtr& root) {
    NodePtr best = optimal_node(root);
    ParseOutcome outcome;
    outcome.score = *best->eval_score;
    outcome.depth = best->depth;
    for (std::size_t i = 0; i < best->candidates.size(); ++i) {
        const Binding& b = *best->bindings[i];
        outcome.fragments.push_back({best->candidates[i], b.agent_id, b.intent, b.confidence});
    }
    std::stable_sort(outcome.fragments.begin(), outcome.fragments.end(),
                     [](const OutcomeFragment& a, const OutcomeFragment& b) {
                         return a.utterance.origin < b.utterance.origin;
                     });
    return outcome;
}

/// Human-readable dump of the scored tree, marking the optimal state.
inline std::string explain_tree(const NodePtr& root) {
    const ParseNode* chosen = nullptr;
    if (root && root->backed_up_score) {
        try {
            chosen = optimal_node(root).get();
        } catch (const std::exception&) {
        }
    }

    std::unordered_map<const ParseNode*, std::size_t> ids;
    std::vector<NodePtr> order;
    detail::for_each_node(root, [&](const NodePtr& node) {
        ids.emplace(node.get(), ids.size());
        order.push_back(node);
    });

    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    for (const NodePtr& node : order) {
        out << "#" << ids[node.get()] << " depth " << node->depth;
        if (node->eval_score) out << " eval " << *node->eval_score;
        if (node->backed_up_score) out << " backup " << *node->backed_up_score;
        if (chosen == node.get()) out << "  <== optimal parse";
        out << "\n";
        for (std::size_t i = 0; i < node->candidates.size(); ++i) {
            out << "  [" << i << "] \"" << node->candidates[i].text << "\"";
            if (node->bindings[i])
                out << " -> " << node->bindings[i]->agent_id << " ("
                    << node->bindings[i]->confidence << ")";
            out << "\n";
        }
        for (const ChildEdge& edge : node->children)
            out << "  split " << to_string(edge.split.kind) << " on [" << edge.candidate_index
                << "] -> #" << ids[edge.child.get()] << "\n";
    }
    return out.str();
}

}  // namespace tess
