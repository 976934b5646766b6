#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>

#include "tess/config_io.hpp"
#include "tess/dataset.hpp"

using namespace tess;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("tess_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("split config round-trips through JSON") {
    SplitConfig cfg;
    cfg.single_conjunctions = {"and", "or"};
    cfg.double_word_pairs = {{"either", "or"}};
    cfg.punctuation_marks = ",.";
    cfg.enable_dependency = false;
    cfg.min_fragment_words = 3;
    cfg.suffix_markers = {"onto"};

    SplitConfig back = split_config_from_json(split_config_to_json(cfg));
    CHECK(back.single_conjunctions == cfg.single_conjunctions);
    CHECK(back.double_word_pairs == cfg.double_word_pairs);
    CHECK(back.punctuation_marks == cfg.punctuation_marks);
    CHECK(back.enable_dependency == cfg.enable_dependency);
    CHECK(back.min_fragment_words == cfg.min_fragment_words);
    CHECK(back.suffix_markers == cfg.suffix_markers);
}

TEST_CASE("pipeline config round-trips and validates") {
    PipelineConfig cfg;
    cfg.delta = 0.25;
    cfg.mode = ScoringMode::joint;
    cfg.max_depth = 2;

    PipelineConfig back = pipeline_config_from_json(pipeline_config_to_json(cfg));
    CHECK(back.delta == 0.25);
    CHECK(back.mode == ScoringMode::joint);
    CHECK(back.max_depth == 2);

    CHECK_THROWS_AS(pipeline_config_from_json({{"delta", 1.5}}), std::runtime_error);
    CHECK_THROWS_AS(pipeline_config_from_json({{"max_depth", 0}}), std::runtime_error);
    CHECK_THROWS_AS(pipeline_config_from_json({{"mode", "maximum"}}), std::invalid_argument);
}

TEST_CASE("empty config JSON keeps the defaults") {
    PipelineConfig cfg = pipeline_config_from_json(json::object());
    CHECK(cfg.delta == 0.4);
    CHECK(cfg.mode == ScoringMode::average);
    CHECK(cfg.max_depth == 3);
    CHECK(cfg.split.min_fragment_words == 2);
    CHECK(cfg.split.enable_dependency);
}

TEST_CASE("intent model round-trips through JSON") {
    auto model = train_intent_model(
        {{"list flights", "flight"}, {"book hotel", "hotel"}, {"find hotels", "hotel"}}, 1.0);
    IntentModel back = model_from_json(model_to_json(model));

    auto q = make_utterance("list flights");
    CHECK(back.posterior_for("flight", q) == model.posterior_for("flight", q));
    CHECK(model_to_json(back).dump() == model_to_json(model).dump());
}

TEST_CASE("build_registry covers all three agent shapes") {
    json doc = {
        {"alpha", 1.0},
        {"agents",
         {{{"id", "intent-a"}, {"intent", "flight"}, {"examples", {"list flights", "book flights"}}},
          {{"id", "intent-b"}, {"intent", "hotel"}, {"examples", {"book hotels", "find hotels"}}},
          {{"id", "kw"}, {"intent", "viz"}, {"keywords", {"plot", "chart"}}, {"weight_per_hit", 0.9}},
          {{"id", "stub"},
           {"intent", "fixed"},
           {"fixed_scores", {{"exact text", 0.75}}},
           {"default_score", 0.05}}}}};

    Registry registry = build_registry(doc);
    CHECK(registry.size() == 4);

    Binding flights = broadcast(registry, make_utterance("list flights"));
    CHECK(flights.agent_id == "intent-a");

    Binding plot = broadcast(registry, make_utterance("plot the chart"));
    CHECK(plot.agent_id == "kw");

    Binding fixed = broadcast(registry, make_utterance("Exact text!"));
    CHECK(fixed.agent_id == "stub");
    CHECK(fixed.confidence == 0.75);
}

TEST_CASE("build_registry validates the document") {
    CHECK_THROWS_AS(build_registry(json::object()), std::runtime_error);
    CHECK_THROWS_AS(build_registry({{"agents", json::array()}}), std::runtime_error);
    CHECK_THROWS_AS(build_registry({{"agents", {{{"id", "a"}, {"intent", "x"}}}}}),
                    std::runtime_error);
}

TEST_CASE("train_embedded_model embeds a deterministic model") {
    json doc = {{"agents",
                 {{{"id", "a"}, {"intent", "x"}, {"examples", {"alpha beta", "beta gamma"}}},
                  {{"id", "b"}, {"intent", "y"}, {"examples", {"delta epsilon"}}}}}};
    json twin = doc;

    REQUIRE(train_embedded_model(doc));
    REQUIRE(train_embedded_model(twin));
    CHECK(doc.at("model").dump() == twin.at("model").dump());

    json no_examples = {{"agents", {{{"id", "kw"}, {"intent", "z"}, {"keywords", {"k"}}}}}};
    CHECK_FALSE(train_embedded_model(no_examples));
}

TEST_CASE("jsonl loader reads records and flags broken lines") {
    TempFile file("data.jsonl",
                  R"({"text": "a b and c d", "parses": ["a b", "c d"], "intents": ["x", "y"]})"
                  "\n"
                  R"({"text": "plain words", "parses": ["plain words"], "intents": ["x"]})"
                  "\n"
                  "not json at all\n");
    auto dataset = load_dataset_jsonl(file.path);
    REQUIRE(dataset.size() == 3);
    CHECK(dataset[0].well_formed());
    CHECK(dataset[0].multi_intent());
    CHECK(dataset[1].well_formed());
    CHECK_FALSE(dataset[1].multi_intent());
    CHECK_FALSE(dataset[2].well_formed());

    CHECK_THROWS_AS(load_dataset_jsonl("no_such_file.jsonl"), std::runtime_error);
}

TEST_CASE("single-intent TSV loader wraps each line") {
    TempFile file("data.tsv", "list flights to boston\tflight\nbook a room\thotel\nbroken line\n");
    auto dataset = load_dataset_atis(file.path);
    REQUIRE(dataset.size() == 3);
    CHECK(dataset[0].gold_intents == std::vector<std::string>{"flight"});
    CHECK(dataset[0].gold_parses == std::vector<std::string>{"list flights to boston"});
    CHECK_FALSE(dataset[2].well_formed());
}

TEST_CASE("multi-intent TSV loader recovers segments when counts agree") {
    TempFile file("mix.tsv",
                  "list flights and book a room\tflight#hotel\n"
                  "show fares, list meals and book seats\tfare#meal\n");
    auto dataset = load_dataset_mixatis(file.path);
    REQUIRE(dataset.size() == 2);

    REQUIRE(dataset[0].well_formed());
    CHECK(dataset[0].gold_parses == std::vector<std::string>{"list flights", "book a room"});
    CHECK(dataset[0].gold_intents == std::vector<std::string>{"flight", "hotel"});

    // Three segments against two labels: kept as a skippable instance.
    CHECK_FALSE(dataset[1].well_formed());
}

TEST_CASE("report JSON is deterministic and gates timing") {
    MetricsReport report;
    report.instances = 4;
    report.multi_intent = 4;
    report.counts[OutcomeCategory::CPCA] = 2;
    report.counts[OutcomeCategory::CPWA] = 1;
    report.counts[OutcomeCategory::WPCA] = 1;
    report.mean_parse_seconds_multi = 0.001;

    json bare = report_to_json(report);
    CHECK(bare.dump() == report_to_json(report).dump());
    CHECK_FALSE(bare.contains("timing"));
    CHECK(bare.at("rates").at("CPCA") == 0.5);
    CHECK(bare.at("correct_parse_rate") == 0.75);
    CHECK(bare.at("correct_agent_rate") == 0.75);

    json timed = report_to_json(report, true);
    CHECK(timed.contains("timing"));

    std::string table = report_to_table(report);
    CHECK(table.find("CPCA") != std::string::npos);
    CHECK(table.find("correct parse") != std::string::npos);
}

TEST_CASE("json file helpers report IO failures") {
    CHECK_THROWS_AS(load_json_file("missing.json"), std::runtime_error);
    TempFile bad("bad.json", "{ not json");
    CHECK_THROWS_AS(load_json_file(bad.path), std::runtime_error);
}
