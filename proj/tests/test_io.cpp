#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "oracles.hpp"
#include "pdgraph/io.hpp"
#include "pdgraph/observables.hpp"

using namespace pdgraph;

TEST_CASE("builtin graphs") {
    const Graph edge = io::builtin_graph("edge");
    CHECK(edge.vertex_count() == 2);
    CHECK(edge.has_edge(1, 2));

    const Graph tri = io::builtin_graph("triangle");
    CHECK(count_cliques(tri, 3).count == 1);

    const Graph star = io::builtin_graph("star-3");
    CHECK(star.vertex_count() == 4);
    CHECK(star.degree(1) == 3);
    CHECK(count_cliques(star, 3).count == 0);

    const Graph k4 = io::builtin_graph("complete-4");
    CHECK(count_cliques(k4, 3).count == 4);
    CHECK(k4.edge_count() == 6);

    const Graph path = io::builtin_graph("path3");
    CHECK(path.degree(2) == 2);

    CHECK_THROWS_AS(io::builtin_graph("nonesuch"), std::runtime_error);
}

TEST_CASE("edge list parsing handles comments, headers, blank lines") {
    std::istringstream in(
        "# a comment\n"
        "vertices 5\n"
        "\n"
        "1 2\n"
        "2 3  # trailing comment\n");
    const Graph g = io::parse_edge_list(in);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(5) == 0);
}

TEST_CASE("edge list parse errors carry line numbers") {
    std::istringstream self_loop("1 2\n2 3\n1 1\n");
    CHECK_THROWS_WITH_AS(io::parse_edge_list(self_loop),
                         doctest::Contains("line 3"), std::runtime_error);

    std::istringstream dup("1 2\n2 1\n");
    CHECK_THROWS_WITH_AS(io::parse_edge_list(dup), doctest::Contains("duplicate"),
                         std::runtime_error);

    std::istringstream bad_id("0 2\n");
    CHECK_THROWS_AS(io::parse_edge_list(bad_id), std::runtime_error);

    std::istringstream garbage("1 2 3\n");
    CHECK_THROWS_AS(io::parse_edge_list(garbage), std::runtime_error);

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(io::parse_edge_list(empty), std::runtime_error);
}

TEST_CASE("edge list round trip") {
    Rng rng(61, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = oracles::random_er_graph(9, 0.3, rng);
        std::ostringstream out;
        io::write_edge_list(out, g);
        std::istringstream in(out.str());
        const Graph back = io::parse_edge_list(in);
        REQUIRE(back.vertex_count() == g.vertex_count());
        REQUIRE(back.edge_count() == g.edge_count());
        for (const auto& e : g.edges()) CHECK(back.has_edge(e.u, e.v));
    }
}

TEST_CASE("format_double survives a round trip") {
    Rng rng(62, 0);
    for (int i = 0; i < 100; ++i) {
        const double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform_below(8));
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("trajectory CSV and JSON writers") {
    SimParams params;
    params.p = 0.5;
    params.delta = 0.2;
    params.horizon = 1.0;
    params.checkpoints = {0.0, 1.0};
    params.seed = 5;
    const auto trajectories = run_replicas(params, io::builtin_graph("edge"), 50);

    std::ostringstream csv;
    io::write_trajectories_csv(csv, trajectories, "test", 5);
    const std::string text = csv.str();
    CHECK(text.find("# pdgraph") == 0);
    CHECK(text.find("replicate,t,n_vertices,n_edges,k,F_k\n") != std::string::npos);
    CHECK(text.find("# seed: 5") != std::string::npos);

    std::ostringstream js;
    io::write_trajectories_json(js, trajectories, "test", 5);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["n_replicas"] == 50);
    REQUIRE(doc["checkpoints"].size() == 2);
    CHECK(doc["checkpoints"][0]["t"] == 0.0);
    CHECK(doc["checkpoints"][0]["n_vertices"]["mean"] == 2.0);
}

TEST_CASE("check results serialize as JSON lines") {
    verify::CheckResult r;
    r.name = "demo";
    r.statistic = 1.0;
    r.expected = 1.5;
    r.pass = true;
    std::ostringstream out;
    io::write_check_results_jsonl(out, {r});
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["name"] == "demo");
    CHECK(doc["pass"] == true);
}
