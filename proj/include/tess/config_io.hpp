#pragma once

// JSON surfaces: pipeline/split configuration, agent definition files,
// trained model embedding, and benchmark report rendering. Serialization is
// deterministic (sorted keys, fixed layouts) so repeated runs are
// byte-identical.

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tess/agent.hpp"
#include "tess/eval.hpp"
#include "tess/intent_model.hpp"
#include "tess/pipeline.hpp"
#include "tess/split.hpp"

namespace tess {

using json = nlohmann::json;

inline json split_config_to_json(const SplitConfig& cfg) {
    json j;
    j["single_conjunctions"] = cfg.single_conjunctions;
    json pairs = json::array();
    for (const auto& [a, b] : cfg.double_word_pairs) pairs.push_back(json::array({a, b}));
    j["double_word_pairs"] = pairs;
    j["punctuation_marks"] = cfg.punctuation_marks;
    j["enable_dependency"] = cfg.enable_dependency;
    j["min_fragment_words"] = cfg.min_fragment_words;
    j["suffix_markers"] = cfg.suffix_markers;
    return j;
}

inline SplitConfig split_config_from_json(const json& j) {
    SplitConfig cfg;
    if (j.contains("single_conjunctions")) {
        cfg.single_conjunctions.clear();
        for (const auto& w : j.at("single_conjunctions"))
            cfg.single_conjunctions.insert(to_lower(w.get<std::string>()));
    }
    if (j.contains("double_word_pairs")) {
        cfg.double_word_pairs.clear();
        for (const auto& p : j.at("double_word_pairs")) {
            if (!p.is_array() || p.size() != 2)
                throw std::runtime_error("double_word_pairs entries must be two-word arrays");
            cfg.double_word_pairs.insert(
                {to_lower(p[0].get<std::string>()), to_lower(p[1].get<std::string>())});
        }
    }
    if (j.contains("punctuation_marks"))
        cfg.punctuation_marks = j.at("punctuation_marks").get<std::string>();
    if (j.contains("enable_dependency"))
        cfg.enable_dependency = j.at("enable_dependency").get<bool>();
    if (j.contains("min_fragment_words")) {
        cfg.min_fragment_words = j.at("min_fragment_words").get<std::size_t>();
        if (cfg.min_fragment_words < 1)
            throw std::runtime_error("min_fragment_words must be at least 1");
    }
    if (j.contains("suffix_markers")) {
        cfg.suffix_markers.clear();
        for (const auto& w : j.at("suffix_markers"))
            cfg.suffix_markers.insert(to_lower(w.get<std::string>()));
    }
    return cfg;
}

inline json pipeline_config_to_json(const PipelineConfig& cfg) {
    json j;
    j["delta"] = cfg.delta;
    j["mode"] = to_string(cfg.mode);
    j["max_depth"] = cfg.max_depth;
    j["split"] = split_config_to_json(cfg.split);
    return j;
}

inline PipelineConfig pipeline_config_from_json(const json& j) {
    PipelineConfig cfg;
    if (j.contains("delta")) {
        cfg.delta = j.at("delta").get<double>();
        if (cfg.delta < 0.0 || cfg.delta > 1.0)
            throw std::runtime_error("delta must lie in [0, 1]");
    }
    if (j.contains("mode")) cfg.mode = parse_scoring_mode(j.at("mode").get<std::string>());
    if (j.contains("max_depth")) {
        cfg.max_depth = j.at("max_depth").get<std::size_t>();
        if (cfg.max_depth < 1) throw std::runtime_error("max_depth must be at least 1");
    }
    if (j.contains("split")) cfg.split = split_config_from_json(j.at("split"));
    return cfg;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("cannot parse " + path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
    return pipeline_config_from_json(load_json_file(path));
}

inline json model_to_json(const IntentModel& model) {
    json j;
    j["alpha"] = model.alpha();
    j["marks"] = model.marks();
    j["intents"] = model.intents();
    j["priors"] = model.priors();
    std::vector<std::string> vocabulary(model.vocabulary().size());
    for (const auto& [word, index] : model.vocabulary()) vocabulary[index] = word;
    j["vocabulary"] = vocabulary;
    j["token_log_weights"] = model.token_log_weights();
    return j;
}

inline IntentModel model_from_json(const json& j) {
    try {
        std::map<std::string, std::size_t> vocabulary;
        std::size_t index = 0;
        for (const auto& w : j.at("vocabulary")) vocabulary[w.get<std::string>()] = index++;
        return IntentModel(j.at("alpha").get<double>(),
                           j.at("intents").get<std::vector<std::string>>(),
                           j.at("priors").get<std::vector<double>>(), std::move(vocabulary),
                           j.at("token_log_weights").get<std::vector<std::vector<double>>>(),
                           j.value("marks", default_punctuation()));
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed model: ") + e.what());
    }
}

/// Trains the joint model over all example-based agents in the definition
/// document and embeds it under "model". Returns false when no agent
/// declares examples.
inline bool train_embedded_model(json& doc) {
    std::vector<LabeledExample> corpus;
    for (const auto& a : doc.value("agents", json::array())) {
        if (!a.contains("examples")) continue;
        std::string intent = a.at("intent").get<std::string>();
        for (const auto& ex : a.at("examples")) corpus.push_back({ex.get<std::string>(), intent});
    }
    if (corpus.empty()) return false;
    double alpha = doc.value("alpha", 1.0);
    doc["model"] = model_to_json(train_intent_model(corpus, alpha));
    return true;
}

/// Builds a registry from an agent definition document. Example-based agents
/// share the embedded model, training it in memory when absent. Recognized
/// agent shapes: examples (intent posterior), keywords + weight_per_hit, and
/// fixed_scores (+ default_score) stubs.
inline Registry build_registry(json doc) {
    if (!doc.contains("agents") || !doc.at("agents").is_array() || doc.at("agents").empty())
        throw std::runtime_error("agent definitions must contain a non-empty 'agents' array");

    bool needs_model = false;
    for (const auto& a : doc.at("agents"))
        if (a.contains("examples")) needs_model = true;
    if (needs_model && !doc.contains("model")) train_embedded_model(doc);

    std::shared_ptr<const IntentModel> model;
    if (doc.contains("model"))
        model = std::make_shared<const IntentModel>(model_from_json(doc.at("model")));

    Registry registry;
    try {
        for (const auto& a : doc.at("agents")) {
            AgentDescriptor d{a.at("id").get<std::string>(), a.value("intent", std::string{}),
                              a.value("has_preview", true)};
            if (a.contains("examples")) {
                registry.add(std::make_unique<IntentAgent>(std::move(d), model));
            } else if (a.contains("keywords")) {
                registry.add(std::make_unique<KeywordAgent>(
                    std::move(d), a.at("keywords").get<std::vector<std::string>>(),
                    a.value("weight_per_hit", 0.5)));
            } else if (a.contains("fixed_scores")) {
                std::map<std::string, double> scores;
                for (const auto& [text, score] : a.at("fixed_scores").items())
                    scores[normalize_for_comparison(text)] = score.get<double>();
                registry.add(std::make_unique<StubAgent>(std::move(d), std::move(scores),
                                                         a.value("default_score", 0.0)));
            } else {
                throw std::runtime_error("agent '" + d.id +
                                         "' declares none of examples/keywords/fixed_scores");
            }
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed agent definition: ") + e.what());
    }
    return registry;
}

inline Registry load_registry(const std::string& path) {
    return build_registry(load_json_file(path));
}

inline json report_to_json(const MetricsReport& report, bool include_timing = false) {
    json j;
    j["instances"] = report.instances;
    j["skipped"] = report.skipped;
    j["multi_intent"] = report.multi_intent;
    j["single_intent"] = report.single_intent;
    json counts, rates;
    for (const auto& [category, count] : report.counts) {
        counts[to_string(category)] = count;
        rates[to_string(category)] = report.rate(category);
    }
    j["counts"] = counts;
    j["rates"] = rates;
    j["correct_parse_rate"] = report.correct_parse_rate();
    j["correct_agent_rate"] = report.correct_agent_rate();
    j["single_intent_accuracy"] = report.single_intent_accuracy();
    if (include_timing) {
        j["timing"] = {{"mean_parse_seconds_single", report.mean_parse_seconds_single},
                       {"median_parse_seconds_single", report.median_parse_seconds_single},
                       {"mean_parse_seconds_multi", report.mean_parse_seconds_multi},
                       {"median_parse_seconds_multi", report.median_parse_seconds_multi}};
    }
    return j;
}

/// Aligned text table over the four categories plus the aggregate rows.
inline std::string report_to_table(const MetricsReport& report, bool include_timing = true) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "instances evaluated          " << report.instances << " (skipped " << report.skipped
        << ")\n";
    out << "multi-intent / single-intent " << report.multi_intent << " / " << report.single_intent
        << "\n\n";
    out << "category  count   rate\n";
    for (const auto& [category, count] : report.counts)
        out << to_string(category) << "      " << std::setw(5) << count << "   "
            << report.rate(category) << "\n";
    out << "\n";
    out << "correct parse  (CPCA+CPWA)   " << report.correct_parse_rate() << "\n";
    out << "correct agents (CPCA+WPCA)   " << report.correct_agent_rate() << "\n";
    out << "single-intent accuracy       " << report.single_intent_accuracy() << "\n";
    if (include_timing) {
        out << "\n";
        out << "mean parse time   single " << report.mean_parse_seconds_single << " s, multi "
            << report.mean_parse_seconds_multi << " s\n";
        out << "median parse time single " << report.median_parse_seconds_single << " s, multi "
            << report.median_parse_seconds_multi << " s\n";
    }
    return out.str();
}

}  // namespace tess
