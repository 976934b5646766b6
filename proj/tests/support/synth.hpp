#pragma once

// Synthetic multi-intent corpus: ten intents with separable vocabulary,
// composed pairwise with connective patterns. Used for the end-to-end
// accuracy bar and the timing bound.

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tess/agent.hpp"
#include "tess/eval.hpp"
#include "tess/intent_model.hpp"

namespace testsupport {

struct SynthCorpus {
    std::vector<std::string> intents;
    std::vector<tess::LabeledExample> seeds;  // five per intent
};

inline const SynthCorpus& synth_corpus() {
    static const SynthCorpus corpus = [] {
        SynthCorpus c;
        auto add = [&](const std::string& intent, std::initializer_list<const char*> seeds) {
            c.intents.push_back(intent);
            for (const char* s : seeds) c.seeds.push_back({s, intent});
        };
        add("flight", {"list available flights", "search morning flights", "find cheap flights",
                       "show flight schedules", "compare airline tickets"});
        add("hotel", {"reserve hotel rooms", "find downtown hotels", "book hotel suites",
                      "compare hotel rates", "search nearby hotels"});
        add("restaurant", {"order vegetarian dinner", "reserve restaurant tables",
                           "find sushi restaurants", "browse lunch menus", "book dinner seating"});
        add("weather", {"check weather forecasts", "show tomorrow temperature",
                        "report rainfall chances", "display humidity levels",
                        "check wind conditions"});
        add("music", {"play jazz music", "queue rock songs", "shuffle workout playlists",
                      "play classical albums", "skip current track"});
        add("email", {"send email replies", "draft email messages", "archive old emails",
                      "forward meeting invites", "delete spam emails"});
        add("calendar", {"schedule team meetings", "create calendar events",
                         "move monday appointments", "cancel afternoon meetings",
                         "add birthday reminders"});
        add("taxi", {"call airport taxis", "request ride pickup", "book evening cabs",
                     "track driver location", "cancel taxi bookings"});
        add("news", {"read breaking news", "summarize sports headlines", "show market news",
                     "browse technology articles", "read morning briefings"});
        add("banking", {"check account balances", "transfer savings funds", "pay utility bills",
                        "review card transactions", "report stolen cards"});
        return c;
    }();
    return corpus;
}

/// One intent-posterior agent per synthetic intent, sharing a jointly
/// trained model over all seeds.
inline tess::Registry synth_registry() {
    const SynthCorpus& corpus = synth_corpus();
    auto model = std::make_shared<const tess::IntentModel>(
        tess::train_intent_model(corpus.seeds, 1.0, corpus.intents));
    tess::Registry registry;
    for (const std::string& intent : corpus.intents)
        registry.emplace<tess::IntentAgent>(tess::AgentDescriptor{intent + "-agent", intent, true},
                                            model);
    return registry;
}

/// Composes `count` two-intent instances by cycling through the connective
/// patterns with seeded random seed pairs from distinct intents.
inline std::vector<tess::DatasetInstance> synth_dataset(std::size_t count, std::uint32_t seed) {
    const SynthCorpus& corpus = synth_corpus();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.seeds.size() - 1);

    std::vector<tess::DatasetInstance> dataset;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t a = pick(rng), b = pick(rng);
        while (corpus.seeds[b].intent == corpus.seeds[a].intent) b = pick(rng);
        const std::string& left = corpus.seeds[a].text;
        const std::string& right = corpus.seeds[b].text;

        std::string text;
        switch (k % 5) {
            case 0: text = left + " and " + right; break;
            case 1: text = left + ", " + right; break;
            case 2: text = "first " + left + " and then " + right; break;
            case 3: text = left + " then " + right; break;
            default: text = left + "; " + right; break;
        }
        dataset.push_back({text, {left, right}, {corpus.seeds[a].intent, corpus.seeds[b].intent}});
    }
    return dataset;
}

}  // namespace testsupport
