#include "doctest.h"

#include "gossip/coupling.hpp"

#include <nlohmann/json.hpp>

using namespace gossip;

TEST_CASE("push coupling: informed sets match in every round") {
    const std::vector<GraphSpec> suite = {
        GraphSpec::complete(8),
        GraphSpec::path(8),
        GraphSpec::star(5),
        GraphSpec::star_chain(3, 3),
        GraphSpec::random_regular(16, 4, 2),
    };
    for (const GraphSpec& spec : suite) {
        const Graph g = generate(spec);
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const CouplingReport report = run_coupled(g, 0, Protocol::Push, seed);
            CAPTURE(spec.id());
            CAPTURE(seed);
            REQUIRE(report.informed_sets_equal_every_round);
            REQUIRE(!report.first_divergence_round.has_value());
            REQUIRE(report.completion_rounds_equal);
            REQUIRE(report.classical_trace.completion_round ==
                    report.buffered_trace.completion_round);
        }
    }
}

TEST_CASE("push coupling holds from every source") {
    const Graph g = generate(GraphSpec::star_chain(2, 3));
    for (NodeId source = 0; source < g.node_count(); ++source) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const CouplingReport report = run_coupled(g, source, Protocol::Push, seed);
            CHECK(report.informed_sets_equal_every_round);
        }
    }
}

TEST_CASE("trivial single-node graph couples at round zero") {
    const Graph g = generate(GraphSpec::complete(1));
    const CouplingReport report = run_coupled(g, 0, Protocol::Push, 4);
    CHECK(report.informed_sets_equal_every_round);
    CHECK(report.classical_trace.completion_round == 0);
    CHECK(report.buffered_trace.completion_round == 0);
}

TEST_CASE("pull on a star chain diverges early and the buffered run is slower") {
    const Graph g = generate(GraphSpec::star_chain(2, 8));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CouplingReport report = run_coupled(g, 0, Protocol::Pull, seed);
        CHECK(!report.informed_sets_equal_every_round);
        REQUIRE(report.first_divergence_round.has_value());
        // Classically every leaf of the source star is informed in round 1;
        // with buffers exactly one node is.
        CHECK(*report.first_divergence_round == 1);
        REQUIRE(report.classical_trace.completion_round.has_value());
        REQUIRE(report.buffered_trace.completion_round.has_value());
        CHECK(*report.buffered_trace.completion_round >
              *report.classical_trace.completion_round);
    }
}

TEST_CASE("coupling report serializes to parseable JSON") {
    const Graph g = generate(GraphSpec::star(3));
    const CouplingReport report = run_coupled(g, 0, Protocol::Push, 1);
    const auto j = nlohmann::json::parse(to_json_string(report));
    CHECK(j.at("protocol") == "push");
    CHECK(j.at("informed_sets_equal_every_round") == true);
    CHECK(j.at("first_divergence_round").is_null());
    CHECK(j.at("trace_classical").at("completion_round") ==
          j.at("trace_buffered").at("completion_round"));
    CHECK(j.at("trace_buffered").at("rounds").is_array());

    const auto compact = nlohmann::json::parse(to_json_string(report, false));
    CHECK(!compact.contains("trace_classical"));
}
