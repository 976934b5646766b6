#pragma once

// Benchmark harness: loads labeled datasets, runs the pipeline per instance,
// buckets each prediction by parse correctness x agent correctness, and
// collects parse-time statistics.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tess/pipeline.hpp"
#include "tess/token.hpp"

namespace tess {

struct DatasetInstance {
    std::string text;
    std::vector<std::string> gold_parses;   // fragment strings, in order
    std::vector<std::string> gold_intents;  // aligned with gold_parses

    bool well_formed() const {
        return !gold_parses.empty() && gold_parses.size() == gold_intents.size();
    }
    bool multi_intent() const { return gold_parses.size() > 1; }
};

enum class OutcomeCategory { CPCA, CPWA, WPCA, WPWA };

inline const char* to_string(OutcomeCategory c) {
    switch (c) {
        case OutcomeCategory::CPCA: return "CPCA";
        case OutcomeCategory::CPWA: return "CPWA";
        case OutcomeCategory::WPCA: return "WPCA";
        case OutcomeCategory::WPWA: return "WPWA";
    }
    return "unknown";
}

/// Crosses parse correctness with agent correctness. The parse is correct
/// iff the normalized predicted fragment sequence equals the normalized gold
/// sequence. Agents are correct positionally for correct parses; for wrong
/// parses the predicted intent multiset must equal the gold multiset.
inline OutcomeCategory classify_outcome(const ParseOutcome& predicted,
                                        const DatasetInstance& gold,
                                        const std::string& marks = default_punctuation()) {
    if (!gold.well_formed()) throw std::invalid_argument("malformed gold instance");

    bool parse_correct = predicted.fragments.size() == gold.gold_parses.size();
    if (parse_correct) {
        for (std::size_t i = 0; i < gold.gold_parses.size(); ++i) {
            if (normalize_for_comparison(predicted.fragments[i].utterance.text, marks) !=
                normalize_for_comparison(gold.gold_parses[i], marks)) {
                parse_correct = false;
                break;
            }
        }
    }

    bool agents_correct;
    if (parse_correct) {
        agents_correct = true;
        for (std::size_t i = 0; i < gold.gold_intents.size(); ++i) {
            if (predicted.fragments[i].intent != gold.gold_intents[i]) {
                agents_correct = false;
                break;
            }
        }
    } else {
        std::multiset<std::string> predicted_intents, gold_intents(gold.gold_intents.begin(),
                                                                   gold.gold_intents.end());
        for (const OutcomeFragment& f : predicted.fragments) predicted_intents.insert(f.intent);
        agents_correct = predicted_intents == gold_intents;
    }

    if (parse_correct) return agents_correct ? OutcomeCategory::CPCA : OutcomeCategory::CPWA;
    return agents_correct ? OutcomeCategory::WPCA : OutcomeCategory::WPWA;
}

struct MetricsReport {
    std::size_t instances = 0;        // well-formed instances evaluated
    std::size_t skipped = 0;          // malformed instances
    std::size_t multi_intent = 0;
    std::size_t single_intent = 0;

    std::map<OutcomeCategory, std::size_t> counts = {{OutcomeCategory::CPCA, 0},
                                                     {OutcomeCategory::CPWA, 0},
                                                     {OutcomeCategory::WPCA, 0},
                                                     {OutcomeCategory::WPWA, 0}};

    double rate(OutcomeCategory c) const {
        return multi_intent == 0
                   ? 0.0
                   : static_cast<double>(counts.at(c)) / static_cast<double>(multi_intent);
    }
    /// Fraction of multi-intent instances whose parse was correct.
    double correct_parse_rate() const {
        return rate(OutcomeCategory::CPCA) + rate(OutcomeCategory::CPWA);
    }
    /// Fraction of multi-intent instances whose agents were correct.
    double correct_agent_rate() const {
        return rate(OutcomeCategory::CPCA) + rate(OutcomeCategory::WPCA);
    }

    std::size_t single_intent_correct = 0;
    double single_intent_accuracy() const {
        return single_intent == 0 ? 0.0
                                  : static_cast<double>(single_intent_correct) /
                                        static_cast<double>(single_intent);
    }

    double mean_parse_seconds_single = 0.0;
    double median_parse_seconds_single = 0.0;
    double mean_parse_seconds_multi = 0.0;
    double median_parse_seconds_multi = 0.0;
};

struct EvalRecord {
    DatasetInstance instance;
    ParseOutcome predicted;
    OutcomeCategory category = OutcomeCategory::WPWA;
    double parse_seconds = 0.0;
};

namespace detail {

inline double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double total = 0.0;
    for (double x : xs) total += x;
    return total / static_cast<double>(xs.size());
}

inline double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    std::size_t mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

}  // namespace detail

/// Runs the pipeline over every instance. Malformed instances are skipped
/// and counted. Records, when requested, carry per-instance predictions.
inline MetricsReport run_benchmark(const std::vector<DatasetInstance>& dataset,
                                   const Registry& registry, const PipelineConfig& cfg,
                                   std::vector<EvalRecord>* records = nullptr) {
    if (dataset.empty()) throw std::invalid_argument("benchmark requires a non-empty dataset");

    MetricsReport report;
    std::vector<double> times_single, times_multi;

    for (const DatasetInstance& instance : dataset) {
        if (!instance.well_formed() || is_blank(instance.text)) {
            ++report.skipped;
            continue;
        }

        auto started = std::chrono::steady_clock::now();
        ParseOutcome predicted = parse_event(instance.text, registry, cfg);
        auto finished = std::chrono::steady_clock::now();
        double seconds = std::chrono::duration<double>(finished - started).count();

        OutcomeCategory category =
            classify_outcome(predicted, instance, cfg.split.punctuation_marks);

        ++report.instances;
        if (instance.multi_intent()) {
            ++report.multi_intent;
            ++report.counts[category];
            times_multi.push_back(seconds);
        } else {
            ++report.single_intent;
            // Single-intent instances collapse to intent correctness.
            if (category == OutcomeCategory::CPCA || category == OutcomeCategory::WPCA)
                ++report.single_intent_correct;
            times_single.push_back(seconds);
        }

        if (records) records->push_back({instance, std::move(predicted), category, seconds});
    }

    report.mean_parse_seconds_single = detail::mean_of(times_single);
    report.median_parse_seconds_single = detail::median_of(times_single);
    report.mean_parse_seconds_multi = detail::mean_of(times_multi);
    report.median_parse_seconds_multi = detail::median_of(times_multi);
    return report;
}

}  // namespace tess
