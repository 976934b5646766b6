// tess — multi-intent parsing and agent orchestration CLI.
//
// Commands: train (fit the intent model embedded in an agent definition
// file), parse (one utterance), bench (batch evaluation over a dataset),
// chat (interactive REPL). Exit codes: 0 success, 1 usage, 2 IO/config,
// 3 runtime failure.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tess/tess.hpp"

namespace {

struct CommonOpts {
    std::string agents_path;
    std::string config_path;
    std::optional<double> delta;
    std::optional<std::string> mode;
    std::optional<std::size_t> max_depth;
    std::string format = "human";
};

void add_common(CLI::App& cmd, CommonOpts& opts, bool agents_required = true) {
    auto* agents = cmd.add_option("--agents", opts.agents_path, "agent definition file (JSON)");
    if (agents_required) agents->required();
    cmd.add_option("--config", opts.config_path, "pipeline/split configuration file (JSON)");
    cmd.add_option("--delta", opts.delta, "selection threshold in [0,1] (overrides config)");
    cmd.add_option("--mode", opts.mode, "scoring mode: average|joint (overrides config)")
        ->check(CLI::IsMember({"average", "joint"}));
    cmd.add_option("--max-depth", opts.max_depth, "maximum splits per parse (overrides config)");
    cmd.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"human", "structured"}));
}

tess::PipelineConfig resolve_config(const CommonOpts& opts) {
    tess::PipelineConfig cfg;
    if (!opts.config_path.empty()) cfg = tess::load_pipeline_config(opts.config_path);
    if (opts.delta) {
        if (*opts.delta < 0.0 || *opts.delta > 1.0)
            throw std::runtime_error("--delta must lie in [0, 1]");
        cfg.delta = *opts.delta;
    }
    if (opts.mode) cfg.mode = tess::parse_scoring_mode(*opts.mode);
    if (opts.max_depth) {
        if (*opts.max_depth < 1) throw std::runtime_error("--max-depth must be at least 1");
        cfg.max_depth = *opts.max_depth;
    }
    return cfg;
}

tess::json event_to_json(const tess::EventResult& result, const tess::PipelineConfig& cfg,
                         bool timing) {
    tess::json out;
    out["status"] = result.status;
    out["mode"] = tess::to_string(cfg.mode);
    out["parse_score"] = result.plan.provenance.score;
    out["depth"] = result.plan.provenance.depth;
    tess::json fragments = tess::json::array();
    for (const auto& f : result.plan.provenance.fragments)
        fragments.push_back({{"text", f.utterance.text},
                             {"agent", f.agent_id},
                             {"intent", f.intent},
                             {"confidence", f.confidence}});
    out["fragments"] = fragments;
    tess::json plan = tess::json::array();
    for (const auto& e : result.plan.entries)
        plan.push_back(
            {{"agent", e.agent_id}, {"fragment", e.fragment.text}, {"confidence", e.confidence}});
    out["plan"] = plan;
    tess::json responses = tess::json::array();
    for (const auto& r : result.responses)
        responses.push_back(
            {{"agent", r.agent_id}, {"fragment", r.fragment}, {"response", r.response}});
    out["responses"] = responses;
    if (timing) out["elapsed_ms"] = result.parse_seconds * 1000.0;
    return out;
}

void print_event_human(std::ostream& out, const tess::EventResult& result,
                       const tess::PipelineConfig& cfg) {
    const auto& outcome = result.plan.provenance;
    out << std::fixed << std::setprecision(4);
    out << "parse score " << outcome.score << " (" << tess::to_string(cfg.mode) << ", depth "
        << outcome.depth << ")\n";
    for (std::size_t i = 0; i < outcome.fragments.size(); ++i) {
        const auto& f = outcome.fragments[i];
        out << "  " << i + 1 << ". \"" << f.utterance.text << "\" -> " << f.agent_id << " (intent "
            << (f.intent.empty() ? "-" : f.intent) << ", " << f.confidence << ")\n";
    }
    if (result.plan.entries.empty()) {
        out << "plan: none (" << result.status << ", delta " << cfg.delta << ")\n";
    } else {
        out << "plan:\n";
        for (const auto& r : result.responses) out << "  " << r.response << "\n";
    }
    out << "parse time " << result.parse_seconds << " s\n";
}

int cmd_parse(const CommonOpts& opts, const std::string& text, bool explain, bool timing) {
    if (tess::is_blank(text)) {
        std::cerr << "parse requires a non-empty utterance\n";
        return 1;
    }
    tess::Registry registry = tess::load_registry(opts.agents_path);
    tess::PipelineConfig cfg = resolve_config(opts);

    tess::EchoExecutor executor;
    tess::NodePtr tree;
    tess::EventResult result = tess::handle_event(text, registry, cfg, &executor, &tree);

    if (opts.format == "structured") {
        tess::json out = event_to_json(result, cfg, timing);
        if (explain) out["tree"] = tess::explain_tree(tree);
        std::cout << out.dump(2) << "\n";
    } else {
        if (explain) std::cout << tess::explain_tree(tree);
        print_event_human(std::cout, result, cfg);
    }
    return 0;
}

int cmd_train(const std::string& agents_path, const std::string& out_path) {
    if (out_path == agents_path) {
        std::cerr << "--out must differ from --agents (definitions are never overwritten)\n";
        return 1;
    }
    tess::json doc = tess::load_json_file(agents_path);
    if (!tess::train_embedded_model(doc))
        throw std::runtime_error("no example-based agents to train in " + agents_path);
    tess::save_json_file(out_path, doc);
    const auto& model = doc.at("model");
    std::cout << "trained " << model.at("intents").size() << " intents over "
              << model.at("vocabulary").size() << " vocabulary tokens -> " << out_path << "\n";
    return 0;
}

int cmd_bench(const CommonOpts& opts, const std::string& dataset_path,
              const std::string& input_format, const std::string& out_path, bool timing) {
    tess::Registry registry = tess::load_registry(opts.agents_path);
    tess::PipelineConfig cfg = resolve_config(opts);

    std::vector<tess::DatasetInstance> dataset;
    if (input_format == "jsonl")
        dataset = tess::load_dataset_jsonl(dataset_path);
    else if (input_format == "atis")
        dataset = tess::load_dataset_atis(dataset_path);
    else
        dataset = tess::load_dataset_mixatis(dataset_path, cfg.split);
    if (dataset.empty()) throw std::runtime_error("dataset is empty: " + dataset_path);

    tess::MetricsReport report = tess::run_benchmark(dataset, registry, cfg);

    if (opts.format == "structured")
        std::cout << tess::report_to_json(report, timing).dump(2) << "\n";
    else
        std::cout << tess::report_to_table(report);
    if (!out_path.empty()) tess::save_json_file(out_path, tess::report_to_json(report, timing));
    return 0;
}

int cmd_chat(const CommonOpts& opts) {
    tess::Registry registry = tess::load_registry(opts.agents_path);
    tess::PipelineConfig cfg = resolve_config(opts);
    tess::EchoExecutor executor;

    std::string line;
    while (true) {
        std::cout << "> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (tess::is_blank(line)) continue;
        if (line == "exit") break;
        try {
            tess::EventResult result = tess::handle_event(line, registry, cfg, &executor);
            print_event_human(std::cout, result, cfg);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    std::cout << "bye\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tess — decentralized multi-intent parsing and agent orchestration"};
    app.require_subcommand(1);

    CommonOpts parse_opts, bench_opts, chat_opts;
    std::string parse_text;
    bool parse_explain = false, parse_timing = false;
    auto* parse_cmd = app.add_subcommand("parse", "parse one utterance and route its fragments");
    add_common(*parse_cmd, parse_opts);
    parse_cmd->add_option("text", parse_text, "utterance to parse")->required();
    parse_cmd->add_flag("--explain", parse_explain, "dump the scored parse tree");
    parse_cmd->add_flag("--timing", parse_timing, "include elapsed time in structured output");

    std::string train_agents, train_out;
    auto* train_cmd = app.add_subcommand("train", "fit the intent model for a definition file");
    train_cmd->add_option("--agents", train_agents, "agent definition file (JSON)")->required();
    train_cmd->add_option("--out", train_out, "where to write the trained definitions")->required();

    std::string bench_dataset, bench_out, bench_input_format = "jsonl";
    bool bench_timing = false;
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark harness over a dataset");
    add_common(*bench_cmd, bench_opts);
    bench_cmd->add_option("dataset", bench_dataset, "dataset file")->required();
    bench_cmd->add_option("--input-format", bench_input_format, "dataset layout")
        ->check(CLI::IsMember({"jsonl", "atis", "mixatis"}));
    bench_cmd->add_option("--out", bench_out, "also write the report to this file");
    bench_cmd->add_flag("--timing", bench_timing, "include timing in structured output");

    auto* chat_cmd = app.add_subcommand("chat", "interactive parse-and-execute loop");
    add_common(*chat_cmd, chat_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(parse_opts, parse_text, parse_explain, parse_timing);
        if (train_cmd->parsed()) return cmd_train(train_agents, train_out);
        if (bench_cmd->parsed())
            return cmd_bench(bench_opts, bench_dataset, bench_input_format, bench_out, bench_timing);
        if (chat_cmd->parsed()) return cmd_chat(chat_opts);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
