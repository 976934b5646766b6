#include <catch2/catch_amalgamated.hpp>
#include <memory>
#include <sstream>

#include "support/test_agents.hpp"
#include "tess/agent.hpp"

using namespace tess;
using namespace testsupport;

TEST_CASE("preview honors the preview contract") {
    FixedAgent plain("a", 0.7);
    CHECK(preview(plain, make_utterance("anything")) == 0.7);

    FixedAgent hidden("b", 0.7, "fixed", false);
    CHECK(preview(hidden, make_utterance("anything")) == 0.0);
}

TEST_CASE("preview clamps and survives faulting agents") {
    FixedAgent hot("a", 3.5);
    CHECK(preview(hot, make_utterance("x y")) == 1.0);
    FixedAgent cold("b", -0.5);
    CHECK(preview(cold, make_utterance("x y")) == 0.0);

    std::ostringstream log;
    ThrowingAgent broken("c");
    CHECK(preview(broken, make_utterance("x y"), &log) == 0.0);
    CHECK(log.str().find("scorer exploded") != std::string::npos);

    NonFiniteAgent nan_agent("d");
    CHECK(preview(nan_agent, make_utterance("x y"), &log) == 0.0);
}

TEST_CASE("keyword agent scores zero without overlap") {
    KeywordAgent agent({"kw", "flight", true}, {"flight", "fly"}, 0.5);
    CHECK(agent.evaluate(make_utterance("book a hotel")).confidence == 0.0);
    CHECK(agent.evaluate(make_utterance("book a flight")).confidence > 0.0);
}

TEST_CASE("registry rejects duplicate ids") {
    Registry registry;
    registry.emplace<FixedAgent>("same", 0.5);
    CHECK_THROWS_AS(registry.emplace<FixedAgent>("same", 0.9), std::invalid_argument);
}

TEST_CASE("broadcast picks the best agent, ties to the smaller id") {
    Registry registry;
    registry.set_diagnostics(nullptr);
    registry.emplace<FixedAgent>("zeta", 0.8);
    registry.emplace<FixedAgent>("alpha", 0.8);
    registry.emplace<FixedAgent>("mid", 0.3);

    Binding b = broadcast(registry, make_utterance("whatever"));
    CHECK(b.agent_id == "alpha");
    CHECK(b.confidence == 0.8);
}

TEST_CASE("broadcast rejects an empty registry") {
    Registry registry;
    CHECK_THROWS_AS(broadcast(registry, make_utterance("x")), std::invalid_argument);
}

TEST_CASE("stub agents answer by normalized text") {
    Registry registry;
    registry.emplace<StubAgent>(AgentDescriptor{"flight-agent", "flight", true},
                                std::map<std::string, double>{{"list available flights", 0.97}},
                                0.1);
    registry.emplace<StubAgent>(
        AgentDescriptor{"meal-agent", "meal", true},
        std::map<std::string, double>{{"show me meal options for my next flight", 0.92}}, 0.1);

    Binding flights = broadcast(registry, make_utterance("List available flights"));
    CHECK(flights.agent_id == "flight-agent");
    CHECK(flights.confidence == 0.97);

    Binding meals = broadcast(registry, make_utterance("show me meal options for my next flight"));
    CHECK(meals.agent_id == "meal-agent");
    CHECK(meals.confidence == 0.92);
}

TEST_CASE("broadcast cache previews each normalized fragment once") {
    Registry registry;
    auto& counter = registry.emplace<CountingAgent>("counter", 0.6);

    BroadcastCache cache;
    broadcast(registry, make_utterance("Plot the data,"), &cache);
    broadcast(registry, make_utterance("plot the data"), &cache);
    broadcast(registry, make_utterance("PLOT THE DATA"), &cache);
    CHECK(counter.calls == 1);

    broadcast(registry, make_utterance("something else"), &cache);
    CHECK(counter.calls == 2);
}

TEST_CASE("a faulting agent does not disturb other bindings") {
    Registry registry;
    registry.set_diagnostics(nullptr);
    registry.emplace<ThrowingAgent>("broken");
    registry.emplace<FixedAgent>("steady", 0.4);

    Binding b = broadcast(registry, make_utterance("route me"));
    CHECK(b.agent_id == "steady");
    CHECK(b.confidence == 0.4);
}

TEST_CASE("broadcast is idempotent") {
    Registry registry;
    registry.emplace<HashAgent>("h1", 11);
    registry.emplace<HashAgent>("h2", 22);

    auto u = make_utterance("list flights and hotels");
    Binding first = broadcast(registry, u);
    Binding second = broadcast(registry, u);
    CHECK(first.agent_id == second.agent_id);
    CHECK(first.confidence == second.confidence);
}
