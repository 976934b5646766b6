#pragma once

// Smoothed bag-of-words intent classifier. A family of agents trained
// jointly over one corpus reports posterior probabilities that sum to 1
// across intents, which keeps broadcast confidences comparable.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tess/agent.hpp"
#include "tess/token.hpp"

namespace tess {

struct LabeledExample {
    std::string text;
    std::string intent;
};

class IntentModel {
public:
    IntentModel() = default;
    IntentModel(double alpha, std::vector<std::string> intents, std::vector<double> priors,
                std::map<std::string, std::size_t> vocabulary,
                std::vector<std::vector<double>> token_log_weights,
                std::string marks = default_punctuation())
        : alpha_(alpha),
          intents_(std::move(intents)),
          priors_(std::move(priors)),
          vocabulary_(std::move(vocabulary)),
          token_log_weights_(std::move(token_log_weights)),
          marks_(std::move(marks)) {
        if (intents_.empty() || priors_.size() != intents_.size() ||
            token_log_weights_.size() != intents_.size())
            throw std::invalid_argument("inconsistent model dimensions");
        for (const auto& row : token_log_weights_)
            if (row.size() != vocabulary_.size())
                throw std::invalid_argument("weight row does not cover the vocabulary");
    }

    double alpha() const { return alpha_; }
    const std::vector<std::string>& intents() const { return intents_; }
    const std::vector<double>& priors() const { return priors_; }
    const std::map<std::string, std::size_t>& vocabulary() const { return vocabulary_; }
    const std::vector<std::vector<double>>& token_log_weights() const { return token_log_weights_; }
    const std::string& marks() const { return marks_; }

    bool has_intent(const std::string& intent) const {
        return intent_index(intent) < intents_.size();
    }

    std::size_t intent_index(const std::string& intent) const {
        for (std::size_t i = 0; i < intents_.size(); ++i)
            if (intents_[i] == intent) return i;
        return intents_.size();
    }

    /// Posterior over intents given the utterance's in-vocabulary tokens;
    /// aligned with intents(). Out-of-vocabulary tokens are skipped, so an
    /// all-unknown query falls back to the priors.
    std::vector<double> posterior(const Utterance& u) const {
        std::vector<double> log_scores(intents_.size());
        for (std::size_t i = 0; i < intents_.size(); ++i) log_scores[i] = std::log(priors_[i]);

        for (const Token& t : u.tokens) {
            if (!t.is_word()) continue;
            auto it = vocabulary_.find(to_lower(t.surface));
            if (it == vocabulary_.end()) continue;
            for (std::size_t i = 0; i < intents_.size(); ++i)
                log_scores[i] += token_log_weights_[i][it->second];
        }

        double max_log = log_scores[0];
        for (double s : log_scores) max_log = std::max(max_log, s);
        double total = 0.0;
        std::vector<double> out(log_scores.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = std::exp(log_scores[i] - max_log);
            total += out[i];
        }
        for (double& p : out) p /= total;
        return out;
    }

    double posterior_for(const std::string& intent, const Utterance& u) const {
        std::size_t idx = intent_index(intent);
        if (idx == intents_.size()) throw std::invalid_argument("unknown intent: " + intent);
        return posterior(u)[idx];
    }

private:
    double alpha_ = 1.0;
    std::vector<std::string> intents_;             // sorted, unique
    std::vector<double> priors_;                   // sums to 1
    std::map<std::string, std::size_t> vocabulary_;
    std::vector<std::vector<double>> token_log_weights_;  // [intent][vocab index]
    std::string marks_ = default_punctuation();
};

/// Trains a smoothed bag-of-words model. When `declared_intents` is given,
/// every declared intent needs at least one example and every example's
/// intent must be declared; otherwise the intent set is taken from the
/// examples. Deterministic: same corpus, same model.
inline IntentModel train_intent_model(const std::vector<LabeledExample>& examples, double alpha,
                                      const std::vector<std::string>& declared_intents = {},
                                      const std::string& marks = default_punctuation()) {
    if (examples.empty()) throw std::invalid_argument("training requires at least one example");
    if (!(alpha > 0.0)) throw std::invalid_argument("smoothing constant must be positive");

    std::map<std::string, std::size_t> example_counts;
    for (const auto& ex : examples) {
        if (ex.intent.empty()) throw std::invalid_argument("example with empty intent label");
        ++example_counts[ex.intent];
    }
    if (!declared_intents.empty()) {
        std::map<std::string, bool> declared;
        for (const auto& intent : declared_intents) declared[intent] = true;
        for (const auto& [intent, n] : example_counts)
            if (!declared.count(intent))
                throw std::invalid_argument("example with undeclared intent: " + intent);
        for (const auto& intent : declared_intents)
            if (!example_counts.count(intent))
                throw std::invalid_argument("declared intent has no examples: " + intent);
    }

    std::vector<std::string> intents;
    for (const auto& [intent, n] : example_counts) intents.push_back(intent);

    std::map<std::string, std::size_t> vocabulary;
    std::vector<std::vector<std::string>> tokens_per_example(examples.size());
    for (std::size_t e = 0; e < examples.size(); ++e) {
        for (const Token& t : tokenize(examples[e].text, marks)) {
            if (!t.is_word()) continue;
            std::string w = to_lower(t.surface);
            vocabulary.emplace(w, 0);
            tokens_per_example[e].push_back(std::move(w));
        }
    }
    std::size_t next = 0;
    for (auto& [word, idx] : vocabulary) idx = next++;

    std::vector<std::vector<double>> counts(intents.size(),
                                            std::vector<double>(vocabulary.size(), 0.0));
    std::vector<double> class_totals(intents.size(), 0.0);
    auto intent_idx = [&](const std::string& intent) {
        return static_cast<std::size_t>(
            std::distance(intents.begin(), std::find(intents.begin(), intents.end(), intent)));
    };
    for (std::size_t e = 0; e < examples.size(); ++e) {
        std::size_t c = intent_idx(examples[e].intent);
        for (const auto& w : tokens_per_example[e]) {
            counts[c][vocabulary[w]] += 1.0;
            class_totals[c] += 1.0;
        }
    }

    std::vector<double> priors(intents.size());
    for (std::size_t c = 0; c < intents.size(); ++c)
        priors[c] = static_cast<double>(example_counts[intents[c]]) /
                    static_cast<double>(examples.size());

    std::vector<std::vector<double>> log_weights(intents.size(),
                                                 std::vector<double>(vocabulary.size()));
    double v = static_cast<double>(vocabulary.size());
    for (std::size_t c = 0; c < intents.size(); ++c) {
        double denom = class_totals[c] + alpha * v;
        for (std::size_t w = 0; w < vocabulary.size(); ++w)
            log_weights[c][w] = std::log((counts[c][w] + alpha) / denom);
    }

    return IntentModel(alpha, std::move(intents), std::move(priors), std::move(vocabulary),
                       std::move(log_weights), marks);
}

/// Agent whose confidence is the model's posterior for one intent.
class IntentAgent : public Agent {
public:
    IntentAgent(AgentDescriptor d, std::shared_ptr<const IntentModel> model)
        : Agent(std::move(d)), model_(std::move(model)) {
        if (!model_) throw std::invalid_argument("null intent model");
        if (!model_->has_intent(intent()))
            throw std::invalid_argument("model does not cover intent: " + intent());
        intent_idx_ = model_->intent_index(intent());
    }

    EvaluationResult evaluate(const Utterance& u) const override {
        return {model_->posterior(u)[intent_idx_]};
    }

    const IntentModel& model() const { return *model_; }

private:
    std::shared_ptr<const IntentModel> model_;
    std::size_t intent_idx_ = 0;
};

}  // namespace tess
