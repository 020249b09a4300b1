#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pdgraph/observables.hpp"

using namespace pdgraph;

namespace {
Graph single_edge() { return Graph::from_edges(2, {{1, 2}}); }
Graph triangle() { return Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}); }
Graph star3() { return Graph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}}); }
}  // namespace

TEST_CASE("degree_stats on the named small graphs") {
    const DegreeStats edge = degree_stats(single_edge());
    CHECK(edge.f(0) == 0.0);
    CHECK(edge.f(1) == 1.0);
    CHECK(edge.f_plus() == 1.0);

    const DegreeStats tri = degree_stats(triangle());
    CHECK(tri.f(2) == 1.0);

    const DegreeStats star = degree_stats(star3());
    CHECK(star.f(1) == doctest::Approx(0.75));
    CHECK(star.f(3) == doctest::Approx(0.25));
}

TEST_CASE("binomial moments on the named small graphs") {
    const DegreeStats edge = degree_stats(single_edge());
    CHECK(binomial_moment(edge, 1) == 1.0);
    CHECK(binomial_moment(edge, 2) == 0.0);

    const DegreeStats tri = degree_stats(triangle());
    CHECK(binomial_moment(tri, 1) == 2.0);
    CHECK(binomial_moment(tri, 2) == 1.0);
    CHECK(binomial_moment(tri, 3) == 0.0);
    CHECK(binomial_moment(tri, 9) == 0.0);  // beyond the max degree
}

TEST_CASE("binomial_coeff is exact and overflow-checked") {
    CHECK(binomial_coeff(0, 0) == 1);
    CHECK(binomial_coeff(5, 2) == 10);
    CHECK(binomial_coeff(200, 4) == 64684950ULL);
    CHECK(binomial_coeff(4, 7) == 0);
    CHECK_THROWS_AS(binomial_coeff(100, 50), std::overflow_error);
}

TEST_CASE("star counts match brute-force subset enumeration") {
    Rng rng(11, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + rng.uniform_below(9);  // up to 12 vertices
        const Graph g = oracles::random_er_graph(n, 0.2 + 0.5 * rng.uniform01(), rng);
        const DegreeStats stats = degree_stats(g);
        for (unsigned k = 1; k <= 4; ++k)
            CHECK(star_count(stats, k) == oracles::brute_force_stars(g, k));
    }
}

TEST_CASE("clique counts match brute-force subset enumeration") {
    CHECK(count_cliques(triangle(), 3).count == 1);
    CHECK(count_cliques(triangle(), 2).count == 3);
    const Graph k4 = Graph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(count_cliques(k4, 3).count == 4);
    CHECK(count_cliques(k4, 4).count == 1);

    Rng rng(12, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracles::random_er_graph(10, 0.3 + 0.4 * rng.uniform01(), rng);
        for (unsigned k = 2; k <= 4; ++k)
            CHECK(count_cliques(g, k).count == oracles::brute_force_cliques(g, k));
    }
}

TEST_CASE("count_cliques validates k") {
    CHECK_THROWS_AS(count_cliques(triangle(), 1), std::invalid_argument);
    CHECK_THROWS_AS(count_cliques(triangle(), 13), std::invalid_argument);
}

TEST_CASE("|V| B_1 = 2 C_2 = 2 |E| exactly") {
    Rng rng(13, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = oracles::random_er_graph(11, 0.4, rng);
        const DegreeStats stats = degree_stats(g);
        CHECK(star_count(stats, 1) == 2 * g.edge_count());
        CHECK(star_count(stats, 1) == 2 * count_cliques(g, 2).count);
    }
}

TEST_CASE("generating function values and shape") {
    const DegreeStats tri = degree_stats(triangle());
    CHECK(generating_function(tri, 0.0) == doctest::Approx(1.0));
    CHECK(generating_function(tri, 0.5) == doctest::Approx(0.25));
    CHECK(generating_function(tri, 1.0) == doctest::Approx(0.0));

    const DegreeStats star = degree_stats(star3());
    CHECK(generating_function(star, 1.0) == doctest::Approx(star.f(0)));
    CHECK(1.0 - generating_function(star, 1.0) == doctest::Approx(star.f_plus()));

    // nonincreasing and convex in x
    Rng rng(14, 0);
    const Graph g = oracles::random_er_graph(12, 0.35, rng);
    const DegreeStats stats = degree_stats(g);
    double prev = generating_function(stats, 0.0);
    std::vector<double> values{prev};
    for (int i = 1; i <= 20; ++i) {
        const double h = generating_function(stats, i / 20.0);
        CHECK(h <= prev + 1e-12);
        values.push_back(h);
        prev = h;
    }
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        CHECK(values[i] <= 0.5 * (values[i - 1] + values[i + 1]) + 1e-12);
}

TEST_CASE("initial_degrees reflects the degree sequence and duplication") {
    Graph g = single_edge();
    const auto d0 = initial_degrees(g, 2);
    CHECK(d0[0] == 1);
    CHECK(d0[1] == 1);

    Rng rng(15, 0);
    g.add_duplicate(1, 1.0, rng);  // copy of 1 attaches to 2
    const auto d1 = initial_degrees(g, 2);
    CHECK(d1[0] == 1);
    CHECK(d1[1] == 2);
    CHECK_THROWS_AS(initial_degrees(g, 9), std::invalid_argument);
}
