#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pdgraph/verify.hpp"

using namespace pdgraph;
using namespace pdgraph::verify;

namespace {

Graph single_edge() { return Graph::from_edges(2, {{1, 2}}); }
Graph path3() { return Graph::from_edges(3, {{1, 2}, {2, 3}}); }

VerifyConfig test_cfg(std::uint64_t seed = 101) {
    VerifyConfig cfg;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("check_rate recovers an exact exponential slope") {
    std::vector<RatePoint> series;
    for (double t : {1.0, 2.0, 3.0, 4.0}) series.push_back({t, std::exp(-0.9 * t), 1e-12});
    const CheckResult r = check_rate("exact", series, -0.9, 0.10);
    CHECK(r.pass);
    CHECK(r.statistic == doctest::Approx(-0.9).epsilon(1e-9));

    series.push_back({5.0, 0.0, 1e-12});
    CHECK_THROWS_AS(check_rate("bad", series, -0.9, 0.1), std::runtime_error);
    CHECK_THROWS_AS(check_rate("short", std::vector<RatePoint>{{1, 1, 1}}, -0.9, 0.1),
                    std::invalid_argument);
}

TEST_CASE("duality at t=0 is exact for a deterministic initial law") {
    const double times[] = {0.0};
    const auto results = check_duality(test_cfg(), 0.5, 0.2, single_edge(), times, 1000, 3);
    for (const auto& r : results) {
        CHECK(r.pass);
        CHECK(r.z_score == 0.0);
        CHECK(r.statistic == r.expected);
    }
}

TEST_CASE("duality check passes at moderate size") {
    const double times[] = {1.0};
    const auto results = check_duality(test_cfg(7), 0.5, 0.2, single_edge(), times, 20000, 5);
    REQUIRE(results.size() == 6);
    for (const auto& r : results) CHECK(r.pass);

    // and both sides sit on the master-equation oracle
    const auto oracle = oracles::z_forward_pmf(0.5, 0.2, 0.5, {0.0, 1.0}, 1.0, 80);
    for (std::size_t k = 0; k <= 5; ++k) {
        const auto& r = results[k];
        CHECK(std::abs(r.statistic - oracle[k]) < 4.0 * std::max(r.stderr_combined, 1e-4));
        CHECK(std::abs(r.expected - oracle[k]) < 4.0 * std::max(r.stderr_combined, 1e-4));
    }
}

TEST_CASE("generating-function duality check passes at moderate size") {
    const double times[] = {1.0};
    const double xs[] = {0.25, 1.0};
    const auto results =
        check_genfun_duality(test_cfg(8), 0.5, 0.2, single_edge(), times, xs, 20000);
    REQUIRE(results.size() == 2);
    for (const auto& r : results) CHECK(r.pass);
}

TEST_CASE("martingale checks: configuration guards") {
    const double times[] = {0.0, 0.5};
    // B_k mean constancy is exact only for k=1 (the B_{k-1} inflow drifts
    // higher moments), so k >= 2 is a configuration error
    CHECK_THROWS_AS(check_martingale(test_cfg(), 0.5, 0.1, single_edge(),
                                     {MartingaleKind::BinomialMoment, 2, 1, 1.0}, times, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_martingale(test_cfg(), 0.4, 0.2, single_edge(),
                                     {MartingaleKind::BinomialMoment, 2, 1, 1.0}, times, 100),
                    std::invalid_argument);
    const double no_zero[] = {0.5, 1.0};
    CHECK_THROWS_AS(check_martingale(test_cfg(), 0.5, 0.2, single_edge(),
                                     {MartingaleKind::BinomialMoment, 1, 1, 1.0}, no_zero, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_martingale(test_cfg(), 0.5, 0.2, single_edge(),
                                     {MartingaleKind::InitialDegreeOverV, 1, 9, 1.0}, times, 100),
                    std::invalid_argument);
}

TEST_CASE("martingale smoke runs pass") {
    const double times[] = {0.0, 0.5, 1.0};
    const std::size_t n = 20000;
    CHECK(check_martingale(test_cfg(9), 0.5, 0.2, single_edge(),
                           {MartingaleKind::BinomialMoment, 1, 1, 1.0}, times, n)
              .pass);
    CHECK(check_martingale(test_cfg(10), 0.5, 0.3, single_edge(),
                           {MartingaleKind::CliqueOverV, 2, 1, 1.0}, times, n)
              .pass);
    CHECK(check_martingale(test_cfg(11), 0.6, 0.2, path3(),
                           {MartingaleKind::InitialDegreeOverV, 1, 1, 1.0}, times, n)
              .pass);
    CHECK(check_martingale(test_cfg(12), 0.5, 0.2, single_edge(),
                           {MartingaleKind::GraphSizeGammaRatio, 1, 1, 1.0}, times, n)
              .pass);
    // gamma-ratio martingale at a non-integer order
    CHECK(check_martingale(test_cfg(13), 0.5, 0.2, single_edge(),
                           {MartingaleKind::GraphSizeGammaRatio, 1, 1, 0.5}, times, n)
              .pass);
}

TEST_CASE("degree expectation check matches the exact formula") {
    const double times[] = {0.0, 0.5, 1.0};
    const auto results = check_degree_expectation(test_cfg(14), 0.6, 0.2, path3(), 1, times, 20000);
    REQUIRE(results.size() == 4);  // three times plus the limit
    CHECK(results[0].pass);
    CHECK(results[0].statistic == results[0].expected);  // t=0 exact
    CHECK(results[1].pass);
    CHECK(results[2].pass);
}

TEST_CASE("graph size law probes pass") {
    const double mart_times[] = {0.0, 1.0};
    const auto results =
        check_graph_size_law(test_cfg(15), 0.5, 0.2, single_edge(), 1.0, mart_times, 20000);
    bool saw_diag = false;
    for (const auto& r : results) {
        CHECK(r.pass);
        if (!r.hard) saw_diag = true;
    }
    CHECK(saw_diag);
}

TEST_CASE("extinction checks guard their preconditions") {
    CHECK_THROWS_AS(check_extinction(test_cfg(), 0.5, 0.0, single_edge(), ExtinctionKind::Edges,
                                     10.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_extinction(test_cfg(), 0.5, 0.3, single_edge(),
                                     ExtinctionKind::InitialDegrees, 10.0, 10),
                    std::invalid_argument);
    // delta = p boundary is allowed for degrees
    const auto r = check_extinction(test_cfg(16), 0.3, 0.3, single_edge(),
                                    ExtinctionKind::InitialDegrees, 10.0, 200, 0.5);
    CHECK_FALSE(r.hard);
}

TEST_CASE("edge extinction at strongly subcritical rates is near-certain") {
    const auto r = check_extinction(test_cfg(17), 0.5, 2.5, single_edge(), ExtinctionKind::Edges,
                                    10.0, 500);
    CHECK(r.pass);
    CHECK(r.statistic >= 0.99);
}

TEST_CASE("ef0 check passes and the series routes agree") {
    const auto results = check_ef0(test_cfg(18), 0.8, 0.05, single_edge(), 30.0, 10000);
    REQUIRE(results.size() == 2);
    CHECK(results[0].pass);
    CHECK(results[1].pass);
    CHECK_THROWS_AS(check_ef0(test_cfg(), 0.5, 0.2, single_edge(), 30.0, 100),
                    std::invalid_argument);
}

TEST_CASE("ix_series agrees with 1 - E[H_x] from graph trajectories") {
    // two-sided MC of E[1 - H_x(t)] = sum_l B_l(0) (-1)^{l+1} E_x[X_t^l]
    const double p = 0.5, delta = 0.2, x = 0.5, t = 1.0;
    const Graph g0 = path3();
    const DegreeStats stats0 = degree_stats(g0);
    const std::vector<double> b0 = initial_binomial_moments(stats0);

    const std::size_t n = 20000;
    SimParams params;
    params.p = p;
    params.delta = delta;
    params.horizon = t;
    params.checkpoints = {t};
    params.seed = pdgraph::derive_seed(19, 1);
    const auto trajectories = run_replicas(params, g0, n);
    double sum = 0.0, sumsq = 0.0;
    for (const auto& traj : trajectories) {
        DegreeStats stats;
        stats.histogram = traj.snapshots.at(0).degree_histogram;
        stats.n_vertices = traj.snapshots.at(0).n_vertices;
        const double ix = 1.0 - generating_function(stats, x);
        sum += ix;
        sumsq += ix * ix;
    }
    const double graph_mean = sum / n;
    const double graph_se = std::sqrt((sumsq / n - graph_mean * graph_mean) / n);

    const auto pdmp = ix_series(p, delta, x, t, b0, n, pdgraph::derive_seed(19, 2));
    const double combined = std::sqrt(graph_se * graph_se + pdmp.se * pdmp.se);
    CHECK(std::abs(graph_mean - pdmp.mean) < 4.0 * combined);
}

TEST_CASE("suites wire up and pass at smoke scale") {
    VerifyConfig cfg;
    cfg.seed = 2024;
    cfg.scale = 0.1;
    for (const std::string suite : {"martingales", "laws"}) {
        const auto results = run_suite(suite, cfg);
        CHECK(!results.empty());
        CHECK(all_hard_passed(results));
    }
    cfg.scale = 0.3;  // the rate fits need a little more signal
    const auto rates = run_suite("rates", cfg);
    CHECK(all_hard_passed(rates));
    bool saw_diag = false;
    for (const auto& r : rates) saw_diag = saw_diag || !r.hard;
    CHECK(saw_diag);

    CHECK_THROWS_AS(run_suite("nonesuch", cfg), std::invalid_argument);
}

TEST_CASE("check statistics are bit-identical across thread counts") {
    const double times[] = {1.0};
    VerifyConfig one = test_cfg(31);
    one.threads = 1;
    VerifyConfig four = test_cfg(31);
    four.threads = 4;
    const auto a = check_duality(one, 0.5, 0.2, single_edge(), times, 5000, 4);
    const auto b = check_duality(four, 0.5, 0.2, single_edge(), times, 5000, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].statistic == b[i].statistic);
        CHECK(a[i].expected == b[i].expected);
        CHECK(a[i].stderr_combined == b[i].stderr_combined);
    }
}

TEST_CASE("all_hard_passed ignores soft failures") {
    std::vector<CheckResult> results(2);
    results[0].pass = true;
    results[0].hard = true;
    results[1].pass = false;
    results[1].hard = false;
    CHECK(all_hard_passed(results));
    results[0].pass = false;
    CHECK_FALSE(all_hard_passed(results));
}
