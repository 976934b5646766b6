// Minimal end-to-end walkthrough: two agents, one compound request, and the
// resulting plan, responses, and parse tree.

#include <iostream>

#include "tess/tess.hpp"

int main() {
    tess::Registry registry;
    registry.emplace<tess::KeywordAgent>(
        tess::AgentDescriptor{"nlq-agent", "query", true},
        std::vector<std::string>{"list", "data", "borrower", "borrowers", "show"}, 0.45);
    registry.emplace<tess::KeywordAgent>(
        tess::AgentDescriptor{"viz-agent", "visualize", true},
        std::vector<std::string>{"plot", "chart", "graph", "visualize"}, 0.9);

    tess::PipelineConfig cfg;
    tess::EchoExecutor executor;
    tess::NodePtr tree;

    const std::string request = "List all borrower data and plot it.";
    tess::EventResult result = tess::handle_event(request, registry, cfg, &executor, &tree);

    std::cout << "request: " << request << "\n";
    std::cout << "status:  " << result.status << "\n\n";

    std::cout << "plan:\n";
    for (const tess::PlanEntry& entry : result.plan.entries)
        std::cout << "  " << entry.agent_id << "  <- \"" << entry.fragment.text << "\"  ("
                  << entry.confidence << ")\n";

    std::cout << "\nresponses:\n";
    for (const tess::AgentResponse& response : result.responses)
        std::cout << "  " << response.response << "\n";

    std::cout << "\nparse tree:\n" << tess::explain_tree(tree);
    return 0;
}
