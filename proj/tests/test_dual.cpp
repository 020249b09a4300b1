#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pdgraph/dual.hpp"
#include "pdgraph/theory.hpp"

using namespace pdgraph;

namespace {

struct MeanVar {
    double mean = 0.0;
    double se = 0.0;
};

MeanVar pmf_mean(const EmpiricalPmf& pmf) {
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t k = 0; k < pmf.counts.size(); ++k) {
        sum += static_cast<double>(k) * static_cast<double>(pmf.counts[k]);
        sumsq += static_cast<double>(k) * static_cast<double>(k) *
                 static_cast<double>(pmf.counts[k]);
    }
    const double n = static_cast<double>(pmf.n);
    MeanVar out;
    out.mean = sum / n;
    out.se = std::sqrt(std::max(0.0, sumsq / n - out.mean * out.mean) / n);
    return out;
}

}  // namespace

TEST_CASE("z state 0 is absorbing") {
    DisasterBdParams params{0.8, 0.1, 0.5};
    Rng rng(31, 0);
    DisasterBdState state{0, 0.0};
    for (int i = 0; i < 20; ++i) {
        state = z_step(state, params, rng);
        CHECK(state.z == 0);
    }
    CHECK(state.clock > 0.0);
}

TEST_CASE("p=1 disasters are identity jumps: plain linear birth-death mean") {
    DisasterBdParams params{1.2, 0.7, 1.0};
    const auto pmf = z_run(params, std::uint64_t{3}, 1.0, 30000, 32);
    const MeanVar m = pmf_mean(pmf);
    const double expect = 3.0 * std::exp((1.2 - 0.7) * 1.0);
    CHECK(std::abs(m.mean - expect) < 3.0 * m.se);
}

TEST_CASE("z_run at t=0 returns the initial law exactly") {
    DisasterBdParams params{0.5, 0.2, 0.5};
    const auto pmf = z_run(params, std::uint64_t{4}, 0.0, 500, 33);
    CHECK(pmf.pmf(4) == 1.0);
    CHECK(pmf.survival_frequency() == 1.0);
}

TEST_CASE("z_run law matches the truncated Kolmogorov-forward oracle") {
    const double b = 0.5, d = 0.2, p = 0.5;
    const auto oracle = oracles::z_forward_pmf(b, d, p, {0.0, 1.0}, 2.0, 80);
    DisasterBdParams params{b, d, p};
    const auto pmf = z_run(params, std::uint64_t{1}, 2.0, 30000, 34);
    for (std::size_t k = 0; k <= 5; ++k) {
        const double se = pmf.se(k);
        CHECK(std::abs(pmf.pmf(k) - oracle[k]) < 4.0 * std::max(se, 1e-4));
    }
}

TEST_CASE("regime-1 survival decays at rate 1 + delta - 2p") {
    const double p = 0.3, delta = 0.5;
    DisasterBdParams params{p, delta, p};
    const double times[] = {4.0, 5.0, 6.0, 7.0, 8.0};
    const auto pmfs = z_run(params, std::uint64_t{1}, times, 200000, 35);
    // weighted least squares on log survival
    double sw = 0, swt = 0, swy = 0;
    for (const auto& pmf : pmfs) {
        const double m = pmf.survival_frequency();
        REQUIRE(m > 0.0);
        const double se_log = pmf.survival_se() / m;
        const double w = 1.0 / (se_log * se_log);
        sw += w;
        swt += w * pmf.t;
        swy += w * std::log(m);
    }
    double num = 0, den = 0;
    for (const auto& pmf : pmfs) {
        const double m = pmf.survival_frequency();
        const double se_log = pmf.survival_se() / m;
        const double w = 1.0 / (se_log * se_log);
        num += w * (pmf.t - swt / sw) * (std::log(m) - swy / sw);
        den += w * (pmf.t - swt / sw) * (pmf.t - swt / sw);
    }
    const double slope = num / den;
    CHECK(std::abs(slope - (-0.9)) < 0.10 * 0.9);
}

TEST_CASE("supercritical extinction frequency matches the series value") {
    DisasterBdParams params{0.8, 0.05, 0.8};
    const auto est = z_extinction_frequency(params, std::uint64_t{1}, 30.0, 10000, 36);
    CHECK(std::abs(est.frequency - 0.341429439142762) < 0.02);
}

TEST_CASE("pdmp_flow fixed points and the p=delta branch") {
    CHECK(pdmp_flow(0.5, 0.2, 0.0, 3.0) == 0.0);
    CHECK(pdmp_flow(1.0, 0.0, 1.0, 5.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pdmp_flow(0.5, 0.2, 0.7, 0.0) == 0.7);

    // p = delta: x0 / (1 + p x0 s)
    for (double s : {0.1, 1.0, 7.5}) {
        CHECK(pdmp_flow(0.4, 0.4, 0.9, s) ==
              doctest::Approx(0.9 / (1.0 + 0.4 * 0.9 * s)).epsilon(1e-12));
    }
    // near-degenerate band stays continuous
    const double base = pdmp_flow(0.4, 0.4, 0.9, 2.0);
    for (double eps : {1e-15, 1e-13, 1e-11}) {
        CHECK(pdmp_flow(0.4 + eps, 0.4, 0.9, 2.0) == doctest::Approx(base).epsilon(1e-9));
    }
    CHECK_THROWS_AS(pdmp_flow(0.5, 0.2, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("pdmp_flow agrees with RK4 integration on a grid") {
    Rng rng(37, 0);
    double max_err = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        double p = 0.02 + 0.96 * rng.uniform01();
        double delta = 2.0 * rng.uniform01();
        if (trial % 5 == 0) delta = p + (rng.uniform01() - 0.5) * 1e-9;  // near-degenerate band
        if (delta < 0.0) delta = 0.0;
        const double x0 = rng.uniform01();
        const double s = 5.0 * rng.uniform01();
        std::vector<double> state{x0};
        oracles::rk4_integrate(state, 0.0, s, 1e-4, [&](const std::vector<double>& y,
                                                        std::vector<double>& dy) {
            dy[0] = p * y[0] * (1.0 - y[0]) - delta * y[0];
        });
        max_err = std::max(max_err, std::abs(pdmp_flow(p, delta, x0, s) - state[0]));
    }
    CHECK(max_err <= 1e-8);
}

TEST_CASE("pdmp_flow is a semigroup") {
    Rng rng(38, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const double p = 0.02 + 0.96 * rng.uniform01();
        const double delta = 1.5 * rng.uniform01();
        const double x0 = rng.uniform01();
        const double s = 3.0 * rng.uniform01();
        const double u = 3.0 * rng.uniform01();
        const double direct = pdmp_flow(p, delta, x0, s + u);
        const double composed = pdmp_flow(p, delta, pdmp_flow(p, delta, x0, s), u);
        CHECK(std::abs(direct - composed) <= 1e-10);
    }
}

TEST_CASE("pdmp_step basics") {
    Rng rng(39, 0);
    PdmpState zero{0.0, 0.0};
    for (int i = 0; i < 10; ++i) {
        zero = pdmp_step(zero, 0.6, 0.1, rng);
        CHECK(zero.x == 0.0);
    }
    CHECK(zero.clock > 0.0);

    // p=1: jumps are identity, so X_t equals the raw flow
    Rng rng2(40, 0);
    const double xt = pdmp_sample_at(1.0, 0.3, 0.8, 2.0, rng2);
    CHECK(xt == doctest::Approx(pdmp_flow(1.0, 0.3, 0.8, 2.0)).epsilon(1e-12));
}

TEST_CASE("exact paths agree with a crude Euler discretization") {
    const double p = 0.5, delta = 0.0, x0 = 1.0, t = 1.0;
    const std::size_t n = 40000;
    const auto exact = x_moment(p, delta, x0, 1, t, n, 41);

    // independent oracle: Euler steps with per-step Bernoulli jumps
    Rng rng(42, 0);
    const double dt = 1e-3;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = x0;
        for (double s = 0.0; s < t; s += dt) {
            x += dt * (p * x * (1.0 - x) - delta * x);
            if (rng.bernoulli(dt)) x *= p;
        }
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    const double combined = std::sqrt(se * se + exact.se * exact.se);
    CHECK(std::abs(mean - exact.mean) < 3.0 * combined + 2e-3);
}

TEST_CASE("x_moment at t=0 is exact and moments are ordered") {
    const auto m0 = x_moment(0.5, 0.2, 0.7, 3, 0.0, 100, 43);
    CHECK(m0.mean == doctest::Approx(0.343).epsilon(1e-12));
    CHECK(m0.se == doctest::Approx(0.0));

    const double times[] = {0.5, 1.5};
    const auto grid = x_moments(0.6, 0.1, 1.0, 4, times, 5000, 44);
    REQUIRE(grid.size() == 8);
    for (std::size_t ti = 0; ti < 2; ++ti)
        for (unsigned k = 1; k < 4; ++k) {
            const auto& lower = grid[ti * 4 + (k - 1)];
            const auto& higher = grid[ti * 4 + k];
            CHECK(higher.mean <= lower.mean);  // pathwise X^{k+1} <= X^k
        }
}

TEST_CASE("ix_series at t=0 inverts the generating function exactly") {
    // path3: B = (4/3, 1/3), F = (0, 2/3, 1/3)
    const std::vector<double> b0{4.0 / 3.0, 1.0 / 3.0};
    for (double x0 : {0.25, 0.5, 1.0}) {
        const auto est = ix_series(0.5, 0.2, x0, 0.0, b0, 200, 45);
        const double direct =
            1.0 - (2.0 / 3.0) * (1.0 - x0) - (1.0 / 3.0) * (1.0 - x0) * (1.0 - x0);
        CHECK(est.mean == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("ix_series with a single-edge start is the first moment") {
    const std::vector<double> b0{1.0};
    const auto via_series = ix_series(0.5, 0.2, 0.5, 2.0, b0, 20000, 46);
    const auto via_moment = x_moment(0.5, 0.2, 0.5, 1, 2.0, 20000, 46);
    CHECK(via_series.mean == via_moment.mean);  // same seed, same paths
    CHECK(via_series.se == via_moment.se);
}

TEST_CASE("estimate_c: bounds, regime guard, tail diagnostic") {
    CHECK_THROWS_AS(estimate_c(0.7, 0.0, 30.0, 100, 47), std::invalid_argument);

    const auto low_p = estimate_c(0.01, 1.0, 30.0, 5000, 48);
    CHECK(low_p.c >= 0.9);
    CHECK(low_p.c < 1.0);

    const auto mid = estimate_c(0.3, 0.5, 30.0, 20000, 49);
    CHECK(mid.c > 0.0);
    CHECK(mid.c < 1.0);
    CHECK(mid.tail_contribution < 1e-3);
    CHECK(mid.se < 0.05);
}

TEST_CASE("cesaro diagnostic reports finite values") {
    const auto diag = cesaro_ratio_diagnostic(0.5, 0.1, 1.0, 1, 5.0, 5000, 50, 0.25);
    CHECK(std::isfinite(diag.time_average));
    CHECK(diag.time_average > 0.0);
    CHECK(diag.time_average <= 1.0);
    CHECK(diag.ck == doctest::Approx(theory::cesaro_ck(0.5, 0.1, 1)));
}

TEST_CASE("DisasterBdParams validation") {
    CHECK_THROWS_AS((DisasterBdParams{0.0, 0.1, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DisasterBdParams{1.0, -0.1, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DisasterBdParams{1.0, 0.1, 1.5}.validate()), std::invalid_argument);
}
