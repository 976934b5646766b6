#pragma once

// Dataset loaders. Native format is JSON-lines with text/parses/intents;
// converters cover two common source layouts: single-intent TSV
// (text <TAB> intent) and multi-intent TSV with '#'-joined labels, whose
// gold parses are recovered by splitting at connectives and punctuation.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tess/eval.hpp"
#include "tess/split.hpp"
#include "tess/token.hpp"

namespace tess {

/// One JSON object per line: {"text": ..., "parses": [...], "intents": [...]}.
/// Structurally broken records become not-well-formed instances so the
/// benchmark can count them as skipped.
inline std::vector<DatasetInstance> load_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);

    std::vector<DatasetInstance> dataset;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank(line)) continue;
        DatasetInstance instance;
        try {
            auto record = nlohmann::json::parse(line);
            instance.text = record.at("text").get<std::string>();
            for (const auto& p : record.at("parses"))
                instance.gold_parses.push_back(p.get<std::string>());
            for (const auto& i : record.at("intents"))
                instance.gold_intents.push_back(i.get<std::string>());
        } catch (const nlohmann::json::exception&) {
            instance.gold_parses.clear();
            instance.gold_intents.clear();
        }
        dataset.push_back(std::move(instance));
    }
    return dataset;
}

/// Single-intent TSV: "text<TAB>intent" per line. The whole text is its own
/// gold parse.
inline std::vector<DatasetInstance> load_dataset_atis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);

    std::vector<DatasetInstance> dataset;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank(line)) continue;
        DatasetInstance instance;
        auto tab = line.find('\t');
        if (tab != std::string::npos && tab > 0 && tab + 1 < line.size()) {
            instance.text = line.substr(0, tab);
            instance.gold_parses.push_back(instance.text);
            instance.gold_intents.push_back(line.substr(tab + 1));
        } else {
            instance.text = line;
        }
        dataset.push_back(std::move(instance));
    }
    return dataset;
}

namespace detail {

/// Best-effort recovery of gold fragments: cut at configured punctuation and
/// at joining words. Returns empty when the segment count disagrees with the
/// expected intent count.
inline std::vector<std::string> segment_multi_intent(const std::string& text,
                                                     std::size_t expected,
                                                     const SplitConfig& cfg) {
    static const std::set<std::string> joiners = {"and", "or", "then", "also"};
    std::vector<std::vector<Token>> runs(1);
    for (const Token& t : tokenize(text, cfg.punctuation_marks)) {
        bool boundary = !t.is_word() || joiners.count(to_lower(t.surface)) > 0;
        if (boundary) {
            if (!runs.back().empty()) runs.emplace_back();
        } else {
            runs.back().push_back(t);
        }
    }
    if (runs.back().empty()) runs.pop_back();
    if (runs.size() != expected) return {};

    std::vector<std::string> segments;
    for (auto& run : runs) segments.push_back(utterance_from_tokens(std::move(run)).text);
    return segments;
}

}  // namespace detail

/// Multi-intent TSV: "text<TAB>intent1#intent2" per line. Gold parses are
/// reconstructed by segmentation; lines whose segment count does not match
/// the label count yield not-well-formed instances.
inline std::vector<DatasetInstance> load_dataset_mixatis(const std::string& path,
                                                         const SplitConfig& cfg = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);

    std::vector<DatasetInstance> dataset;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank(line)) continue;
        DatasetInstance instance;
        auto tab = line.find('\t');
        if (tab != std::string::npos && tab > 0 && tab + 1 < line.size()) {
            instance.text = line.substr(0, tab);
            std::stringstream labels(line.substr(tab + 1));
            std::string label;
            while (std::getline(labels, label, '#'))
                if (!label.empty()) instance.gold_intents.push_back(label);
            instance.gold_parses =
                detail::segment_multi_intent(instance.text, instance.gold_intents.size(), cfg);
            if (instance.gold_parses.empty()) instance.gold_intents.clear();
        } else {
            instance.text = line;
        }
        dataset.push_back(std::move(instance));
    }
    return dataset;
}

}  // namespace tess
