#include "pdgraph/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pdgraph/observables.hpp"
#include "pdgraph/parallel.hpp"
#include "pdgraph/theory.hpp"

namespace pdgraph::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Distinct rng sub-stream tags, one per check side.
enum SeedTag : std::uint64_t {
    kDualityGraph = 1,
    kDualityZ,
    kGenfunGraph,
    kGenfunPdmp,
    kMartingale,
    kDegreeExpectation,
    kGraphSize,
    kExtinction,
    kEf0,
    kRateZ,
    kRateB2,
    kPrefactorC,
    kCesaro,
};

// Drives one PD trajectory, visiting the pre-event state at each requested
// time. Throws if the vertex cap is hit (a biased check is worse than none).
template <typename Visit>
void walk_graph(const Graph& g0, const SimParams& params, std::uint64_t seed,
                std::uint64_t replicate, std::span<const double> times, Visit visit) {
    Simulation sim(g0, params, Rng(seed, replicate));
    std::size_t ti = 0;
    while (ti < times.size()) {
        const double t_next = sim.peek_next_time();
        while (ti < times.size() && times[ti] < t_next) {
            visit(ti, sim.graph());
            ++ti;
        }
        if (ti >= times.size()) break;
        sim.apply_pending();
        if (sim.graph().vertex_count() >= params.max_vertices)
            throw std::runtime_error("verify: vertex cap reached mid-check");
    }
}

SimParams base_params(double p, double delta) {
    SimParams params;
    params.p = p;
    params.delta = delta;
    return params;
}

struct MeanAcc {
    std::vector<double> sum;
    std::vector<double> sumsq;

    explicit MeanAcc(std::size_t cells = 0) : sum(cells, 0.0), sumsq(cells, 0.0) {}

    void add(std::size_t cell, double v) {
        sum[cell] += v;
        sumsq[cell] += v * v;
    }

    static void merge(MeanAcc& a, const MeanAcc& b) {
        for (std::size_t i = 0; i < a.sum.size(); ++i) {
            a.sum[i] += b.sum[i];
            a.sumsq[i] += b.sumsq[i];
        }
    }

    double mean(std::size_t cell, std::uint64_t n) const {
        return sum[cell] / static_cast<double>(n);
    }

    double se(std::size_t cell, std::uint64_t n) const {
        const double nd = static_cast<double>(n);
        const double m = sum[cell] / nd;
        return std::sqrt(std::max(0.0, sumsq[cell] / nd - m * m) / nd);
    }
};

double two_sample_z(double m1, double se1, double m2, double se2) {
    const double se = std::sqrt(se1 * se1 + se2 * se2);
    if (se == 0.0) return m1 == m2 ? 0.0 : INFINITY;
    return (m1 - m2) / se;
}

std::size_t scaled(std::size_t n, double scale) {
    const auto s = static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale));
    return std::max<std::size_t>(s, 64);
}

CheckResult make_result(std::string name, double statistic, double expected, double se,
                        double z_threshold, std::uint64_t n, double runtime, double budget) {
    CheckResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.expected = expected;
    r.stderr_combined = se;
    r.z_score = se == 0.0 ? (statistic == expected ? 0.0 : INFINITY) : (statistic - expected) / se;
    r.pass = std::abs(r.z_score) <= z_threshold;
    r.n_replicas = n;
    r.runtime_seconds = runtime;
    r.budget_seconds = budget;
    return r;
}

// Erlang(r, 1) CDF, r a positive integer.
double erlang_cdf(unsigned r, double x) {
    if (x <= 0.0) return 0.0;
    double term = 1.0;
    double sum = 1.0;
    for (unsigned j = 1; j < r; ++j) {
        term *= x / j;
        sum += term;
    }
    return 1.0 - std::exp(-x) * sum;
}

}  // namespace

std::vector<CheckResult> check_duality(const VerifyConfig& cfg, double p, double delta,
                                       const Graph& g0, std::span<const double> times,
                                       std::size_t n, unsigned kmax) {
    const auto start = Clock::now();
    const SimParams params = base_params(p, delta);
    const std::size_t cells = times.size() * (kmax + 1);

    // graph side: mean F_k(t) over replicas
    MeanAcc graph_acc = parallel_accumulate<MeanAcc>(
        n, MeanAcc(cells),
        [&](std::uint64_t r, MeanAcc& acc) {
            walk_graph(g0, params, derive_seed(cfg.seed, kDualityGraph), r, times,
                       [&](std::size_t ti, const Graph& g) {
                           const DegreeStats stats = degree_stats(g);
                           for (unsigned k = 0; k <= kmax; ++k)
                               acc.add(ti * (kmax + 1) + k, stats.f(k));
                       });
        },
        MeanAcc::merge, cfg.threads);

    // Z side: Z(p, delta, p) started from the degree law of g0
    DisasterBdParams zparams{p, delta, p};
    const DegreeStats stats0 = degree_stats(g0);
    std::vector<double> law(stats0.histogram.size());
    for (std::size_t k = 0; k < law.size(); ++k) law[k] = stats0.f(k);
    const auto pmfs = z_run(zparams, law, times, n, derive_seed(cfg.seed, kDualityZ), cfg.threads);

    std::vector<CheckResult> out;
    const double runtime = seconds_since(start);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        for (unsigned k = 0; k <= kmax; ++k) {
            const std::size_t cell = ti * (kmax + 1) + k;
            const double gm = graph_acc.mean(cell, n);
            const double gs = graph_acc.se(cell, n);
            const double zm = pmfs[ti].pmf(k);
            const double zs = pmfs[ti].se(k);
            CheckResult r = make_result(
                "duality/t=" + fmt(times[ti]) + "/k=" + std::to_string(k), gm, zm,
                std::sqrt(gs * gs + zs * zs), cfg.z_threshold, n, runtime, 300.0);
            r.z_score = two_sample_z(gm, gs, zm, zs);
            r.pass = std::abs(r.z_score) <= cfg.z_threshold;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<CheckResult> check_genfun_duality(const VerifyConfig& cfg, double p, double delta,
                                              const Graph& g0, std::span<const double> times,
                                              std::span<const double> xs, std::size_t n) {
    const auto start = Clock::now();
    const SimParams params = base_params(p, delta);
    const std::size_t cells = times.size() * xs.size();

    MeanAcc graph_acc = parallel_accumulate<MeanAcc>(
        n, MeanAcc(cells),
        [&](std::uint64_t r, MeanAcc& acc) {
            walk_graph(g0, params, derive_seed(cfg.seed, kGenfunGraph), r, times,
                       [&](std::size_t ti, const Graph& g) {
                           const DegreeStats stats = degree_stats(g);
                           for (std::size_t xi = 0; xi < xs.size(); ++xi)
                               acc.add(ti * xs.size() + xi, generating_function(stats, xs[xi]));
                       });
        },
        MeanAcc::merge, cfg.threads);

    // PDMP side: per path, sum_k F_k(0) (1 - X_t)^k
    const DegreeStats stats0 = degree_stats(g0);
    std::vector<CheckResult> out;
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const double x0 = xs[xi];
        MeanAcc pdmp_acc = parallel_accumulate<MeanAcc>(
            n, MeanAcc(times.size()),
            [&](std::uint64_t r, MeanAcc& acc) {
                Rng rng(derive_seed(cfg.seed, kGenfunPdmp + 101 * xi), r);
                double x = x0;
                double t_cur = 0.0;
                std::size_t ti = 0;
                double next_jump = rng.exponential(1.0);
                while (ti < times.size()) {
                    if (times[ti] <= next_jump) {
                        const double xt = pdmp_flow(p, delta, x, times[ti] - t_cur);
                        double h0 = 0.0;
                        for (std::size_t k = 0; k < stats0.histogram.size(); ++k) {
                            if (stats0.histogram[k] == 0) continue;
                            h0 += stats0.f(k) * std::pow(1.0 - xt, static_cast<double>(k));
                        }
                        acc.add(ti, h0);
                        ++ti;
                    } else {
                        x = p * pdmp_flow(p, delta, x, next_jump - t_cur);
                        t_cur = next_jump;
                        next_jump = t_cur + rng.exponential(1.0);
                    }
                }
            },
            MeanAcc::merge, cfg.threads);

        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            const std::size_t cell = ti * xs.size() + xi;
            const double gm = graph_acc.mean(cell, n);
            const double gs = graph_acc.se(cell, n);
            const double pm = pdmp_acc.mean(ti, n);
            const double ps = pdmp_acc.se(ti, n);
            CheckResult r = make_result("genfun_duality/t=" + fmt(times[ti]) + "/x=" + fmt(x0), gm,
                                        pm, std::sqrt(gs * gs + ps * ps), cfg.z_threshold, n, 0.0,
                                        300.0);
            r.z_score = two_sample_z(gm, gs, pm, ps);
            r.pass = std::abs(r.z_score) <= cfg.z_threshold;
            out.push_back(std::move(r));
        }
    }
    const double runtime = seconds_since(start);
    for (auto& r : out) r.runtime_seconds = runtime;
    return out;
}

CheckResult check_martingale(const VerifyConfig& cfg, double p, double delta, const Graph& g0,
                             const MartingaleSpec& spec, std::span<const double> times,
                             std::size_t n) {
    const auto start = Clock::now();
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("check_martingale: times must start at 0");

    std::string name;
    // compensation factor and per-snapshot statistic
    std::vector<double> factor(times.size());
    switch (spec.kind) {
        case MartingaleKind::BinomialMoment: {
            // Only B_1 has a constant compensated mean: d/dt E[B_k] =
            // -g(k) E[B_k] + p(k-1) E[B_{k-1}], so for k >= 2 the inflow from
            // B_{k-1} drifts the mean and constancy is not a valid surrogate.
            // Decay of higher B_k is covered by the rate checks instead.
            if (spec.k != 1)
                throw std::invalid_argument(
                    "check_martingale: mean constancy holds for B_1 only; use a rate check "
                    "for k >= 2");
            const double g1 = theory::g_func(p, delta, 1.0);
            for (std::size_t i = 0; i < times.size(); ++i) factor[i] = std::exp(times[i] * g1);
            name = "martingale/B1";
            break;
        }
        case MartingaleKind::CliqueOverV: {
            if (spec.k < 2) throw std::invalid_argument("check_martingale: clique k must be >= 2");
            const double kd = spec.k;
            const double qk = kd * std::pow(p, kd - 1.0) - 1.0 - delta * kd * (kd - 1.0) / 2.0;
            for (std::size_t i = 0; i < times.size(); ++i) factor[i] = std::exp(-times[i] * qk);
            name = "martingale/C" + std::to_string(spec.k) + "_over_V";
            break;
        }
        case MartingaleKind::InitialDegreeOverV: {
            if (spec.i == 0 || spec.i > g0.vertex_count())
                throw std::invalid_argument("check_martingale: i must be an initial vertex");
            for (std::size_t i = 0; i < times.size(); ++i)
                factor[i] = std::exp(-times[i] * (p - delta - 1.0));
            name = "martingale/D" + std::to_string(spec.i) + "_over_V";
            break;
        }
        case MartingaleKind::GraphSizeGammaRatio: {
            for (std::size_t i = 0; i < times.size(); ++i)
                factor[i] = std::exp(-times[i] * spec.r);
            name = "martingale/graph_size_r=" + fmt(spec.r);
            break;
        }
    }

    const SimParams params = base_params(p, delta);
    MeanAcc acc = parallel_accumulate<MeanAcc>(
        n, MeanAcc(times.size()),
        [&](std::uint64_t r, MeanAcc& a) {
            walk_graph(g0, params, derive_seed(cfg.seed, kMartingale + 1000 * (int)spec.kind + spec.k),
                       r, times, [&](std::size_t ti, const Graph& g) {
                           double value = 0.0;
                           switch (spec.kind) {
                               case MartingaleKind::BinomialMoment:
                                   value = binomial_moment(degree_stats(g), spec.k);
                                   break;
                               case MartingaleKind::CliqueOverV:
                                   value = static_cast<double>(count_cliques(g, spec.k).count) /
                                           static_cast<double>(g.vertex_count());
                                   break;
                               case MartingaleKind::InitialDegreeOverV:
                                   value = static_cast<double>(g.degree(spec.i)) /
                                           static_cast<double>(g.vertex_count());
                                   break;
                               case MartingaleKind::GraphSizeGammaRatio:
                                   value = theory::gamma_ratio(
                                       static_cast<double>(g.vertex_count()) + 1.0, spec.r);
                                   break;
                           }
                           a.add(ti, factor[ti] * value);
                       });
        },
        MeanAcc::merge, cfg.threads);

    double worst_z = 0.0;
    double worst_diff = 0.0;
    double worst_se = 0.0;
    std::string note;
    for (std::size_t i = 0; i < times.size(); ++i) {
        note += (i ? ", " : "means: ") + fmt(acc.mean(i, n)) + "@t=" + fmt(times[i]);
        for (std::size_t j = i + 1; j < times.size(); ++j) {
            const double z = two_sample_z(acc.mean(i, n), acc.se(i, n), acc.mean(j, n), acc.se(j, n));
            if (std::abs(z) > std::abs(worst_z)) {
                worst_z = z;
                worst_diff = acc.mean(i, n) - acc.mean(j, n);
                worst_se = std::sqrt(acc.se(i, n) * acc.se(i, n) + acc.se(j, n) * acc.se(j, n));
            }
        }
    }

    CheckResult r;
    r.name = name;
    r.statistic = worst_diff;
    r.expected = 0.0;
    r.stderr_combined = worst_se;
    r.z_score = worst_z;
    r.pass = std::abs(worst_z) <= cfg.z_threshold;
    r.n_replicas = n;
    r.runtime_seconds = seconds_since(start);
    r.budget_seconds = 600.0;
    r.note = note;
    return r;
}

std::vector<CheckResult> check_degree_expectation(const VerifyConfig& cfg, double p, double delta,
                                                  const Graph& g0, VertexId i,
                                                  std::span<const double> times, std::size_t n) {
    const auto start = Clock::now();
    if (i == 0 || i > g0.vertex_count())
        throw std::invalid_argument("check_degree_expectation: i must be an initial vertex");
    const double d0 = static_cast<double>(g0.degree(i));
    const std::size_t n0 = g0.vertex_count();

    const SimParams params = base_params(p, delta);
    MeanAcc acc = parallel_accumulate<MeanAcc>(
        n, MeanAcc(times.size()),
        [&](std::uint64_t r, MeanAcc& a) {
            walk_graph(g0, params, derive_seed(cfg.seed, kDegreeExpectation), r, times,
                       [&](std::size_t ti, const Graph& g) {
                           a.add(ti, std::exp(-times[ti] * (p - delta)) *
                                         static_cast<double>(g.degree(i)));
                       });
        },
        MeanAcc::merge, cfg.threads);

    const double runtime = seconds_since(start);
    std::vector<CheckResult> out;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        out.push_back(make_result(
            "degree_expectation/i=" + std::to_string(i) + "/t=" + fmt(times[ti]),
            acc.mean(ti, n), theory::expected_degree_t(d0, p, n0, times[ti]), acc.se(ti, n),
            cfg.z_threshold, n, runtime, 180.0));
    }
    const std::size_t last = times.size() - 1;
    out.push_back(make_result("degree_expectation/i=" + std::to_string(i) + "/limit",
                              acc.mean(last, n), theory::expected_degree_limit(d0, p, n0),
                              acc.se(last, n), cfg.z_threshold, n, runtime, 180.0));
    return out;
}

std::vector<CheckResult> check_graph_size_law(const VerifyConfig& cfg, double p, double delta,
                                              const Graph& g0, double t,
                                              std::span<const double> mart_times, std::size_t n) {
    const auto start = Clock::now();
    const auto n0 = static_cast<unsigned>(g0.vertex_count());
    const unsigned r_successes = n0 + 1;

    // grid for the distributional-distance diagnostic at the largest time
    const double t_diag = mart_times.empty() ? t : mart_times.back();
    std::vector<double> diag_grid;
    for (double x = 0.5; x <= 8.0; x += 0.5) diag_grid.push_back(x);

    std::vector<double> all_times(mart_times.begin(), mart_times.end());
    const bool t_in_mart = std::find(all_times.begin(), all_times.end(), t) != all_times.end();
    if (!t_in_mart) {
        all_times.push_back(t);
        std::sort(all_times.begin(), all_times.end());
    }
    const std::size_t probe_ti =
        std::find(all_times.begin(), all_times.end(), t) - all_times.begin();
    const std::size_t diag_ti =
        std::find(all_times.begin(), all_times.end(), std::max(t_diag, t)) - all_times.begin();

    struct Acc {
        MeanAcc mart;
        std::vector<std::uint64_t> probe_counts;
        std::vector<std::uint64_t> diag_counts;
    };
    Acc init{MeanAcc(all_times.size()), std::vector<std::uint64_t>(5, 0),
             std::vector<std::uint64_t>(diag_grid.size(), 0)};

    const SimParams params = base_params(p, delta);
    Acc acc = parallel_accumulate<Acc>(
        n, init,
        [&](std::uint64_t r, Acc& a) {
            walk_graph(g0, params, derive_seed(cfg.seed, kGraphSize), r, all_times,
                       [&](std::size_t ti, const Graph& g) {
                           const double size1 = static_cast<double>(g.vertex_count()) + 1.0;
                           a.mart.add(ti, std::exp(-all_times[ti]) * size1);
                           if (ti == probe_ti) {
                               const std::size_t m = g.vertex_count() + 1;
                               if (m >= r_successes && m < r_successes + 5)
                                   ++a.probe_counts[m - r_successes];
                           }
                           if (ti == diag_ti) {
                               const double scaled_size =
                                   std::exp(-all_times[ti]) * static_cast<double>(g.vertex_count());
                               for (std::size_t gi = 0; gi < diag_grid.size(); ++gi)
                                   if (scaled_size <= diag_grid[gi]) ++a.diag_counts[gi];
                           }
                       });
        },
        [](Acc& a, const Acc& b) {
            MeanAcc::merge(a.mart, b.mart);
            for (std::size_t i = 0; i < a.probe_counts.size(); ++i)
                a.probe_counts[i] += b.probe_counts[i];
            for (std::size_t i = 0; i < a.diag_counts.size(); ++i)
                a.diag_counts[i] += b.diag_counts[i];
        },
        cfg.threads);

    const double runtime = seconds_since(start);
    std::vector<CheckResult> out;

    // negative-binomial probes: P(|V_t|+1 = m), m = n0+1 .. n0+5
    const double q = std::exp(-t);
    double pmf = std::pow(q, static_cast<double>(r_successes));  // m = r_successes
    for (unsigned j = 0; j < 5; ++j) {
        const unsigned m = r_successes + j;
        if (j > 0) {
            // C(m-1, r-1)/C(m-2, r-1) = (m-1)/(m-r)
            pmf *= (1.0 - q) * static_cast<double>(m - 1) / static_cast<double>(m - r_successes);
        }
        const double freq = static_cast<double>(acc.probe_counts[j]) / static_cast<double>(n);
        const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(n));
        out.push_back(make_result("graph_size_law/pmf/m=" + std::to_string(m), freq, pmf, se,
                                  cfg.z_threshold, n, runtime, 120.0));
    }

    for (std::size_t ti = 0; ti < all_times.size(); ++ti) {
        if (!t_in_mart && ti == probe_ti &&
            std::find(mart_times.begin(), mart_times.end(), all_times[ti]) == mart_times.end())
            continue;
        out.push_back(make_result("graph_size_law/martingale/t=" + fmt(all_times[ti]),
                                  acc.mart.mean(ti, n), static_cast<double>(r_successes),
                                  acc.mart.se(ti, n), cfg.z_threshold, n, runtime, 120.0));
    }

    // diagnostic: sup over the grid of |empirical CDF - Erlang(n0+1) CDF|
    double sup_dist = 0.0;
    for (std::size_t gi = 0; gi < diag_grid.size(); ++gi) {
        const double emp = static_cast<double>(acc.diag_counts[gi]) / static_cast<double>(n);
        sup_dist = std::max(sup_dist, std::abs(emp - erlang_cdf(r_successes, diag_grid[gi])));
    }
    CheckResult diag;
    diag.name = "graph_size_law/gamma_distance_diagnostic/t=" + fmt(all_times[diag_ti]);
    diag.statistic = sup_dist;
    diag.expected = 0.0;
    diag.pass = true;
    diag.hard = false;
    diag.n_replicas = n;
    diag.runtime_seconds = runtime;
    diag.budget_seconds = 120.0;
    diag.note = "finite-t bias uncontrolled; reported, not asserted";
    out.push_back(std::move(diag));
    return out;
}

CheckResult check_rate(const std::string& name, std::span<const RatePoint> series,
                       double expected_slope, double rel_tol) {
    if (series.size() < 3) throw std::invalid_argument("check_rate: need at least 3 points");
    double sw = 0.0, swt = 0.0, swy = 0.0;
    for (const auto& pt : series) {
        if (!(pt.mean > 0.0))
            throw std::runtime_error("check_rate: nonpositive mean in window (insufficient signal)");
        const double se_log = pt.se / pt.mean;
        const double w = se_log > 0.0 ? 1.0 / (se_log * se_log) : 1e12;
        sw += w;
        swt += w * pt.t;
        swy += w * std::log(pt.mean);
    }
    const double tbar = swt / sw;
    const double ybar = swy / sw;
    double num = 0.0, den = 0.0;
    for (const auto& pt : series) {
        const double se_log = pt.se / pt.mean;
        const double w = se_log > 0.0 ? 1.0 / (se_log * se_log) : 1e12;
        num += w * (pt.t - tbar) * (std::log(pt.mean) - ybar);
        den += w * (pt.t - tbar) * (pt.t - tbar);
    }
    const double slope = num / den;
    const double slope_se = std::sqrt(1.0 / den);

    CheckResult r;
    r.name = name;
    r.statistic = slope;
    r.expected = expected_slope;
    r.stderr_combined = slope_se;
    r.z_score = slope_se > 0.0 ? (slope - expected_slope) / slope_se : 0.0;
    r.pass = std::abs(slope - expected_slope) <= rel_tol * std::abs(expected_slope);
    r.note = "relative tolerance " + fmt(rel_tol);
    return r;
}

CheckResult check_extinction(const VerifyConfig& cfg, double p, double delta, const Graph& g0,
                             ExtinctionKind kind, double horizon, std::size_t n,
                             double min_fraction) {
    const auto start = Clock::now();
    std::string name;
    if (kind == ExtinctionKind::Edges) {
        if (!theory::clique_extinct(p, delta, 2))
            throw std::invalid_argument("check_extinction: requires delta >= 2p (edge die-out)");
        name = "extinction/edges";
    } else {
        if (!(delta >= p))
            throw std::invalid_argument("check_extinction: requires delta >= p (degree die-out)");
        name = "extinction/initial_degrees";
    }
    const std::size_t n0 = g0.vertex_count();
    const SimParams params = base_params(p, delta);

    const std::uint64_t hits = parallel_accumulate<std::uint64_t>(
        n, 0,
        [&](std::uint64_t r, std::uint64_t& count) {
            Simulation sim(g0, params, Rng(derive_seed(cfg.seed, kExtinction + (int)kind), r));
            auto absorbed = [&]() {
                if (kind == ExtinctionKind::Edges) return sim.graph().edge_count() == 0;
                for (VertexId i = 1; i <= n0; ++i)
                    if (sim.graph().degree(i) > 0) return false;
                return true;
            };
            // edge extinction and all-initial-degrees-zero are absorbing:
            // duplication only attaches copies to existing neighbors
            while (!absorbed()) {
                if (sim.peek_next_time() > horizon) break;
                sim.apply_pending();
                if (sim.graph().vertex_count() >= params.max_vertices)
                    throw std::runtime_error("verify: vertex cap reached mid-check");
            }
            if (absorbed()) ++count;
        },
        [](std::uint64_t& a, const std::uint64_t& b) { a += b; }, cfg.threads);

    const double freq = static_cast<double>(hits) / static_cast<double>(n);
    CheckResult r;
    r.name = name;
    r.statistic = freq;
    r.expected = min_fraction;
    r.stderr_combined = std::sqrt(freq * (1.0 - freq) / static_cast<double>(n));
    r.z_score = r.stderr_combined > 0.0 ? (freq - min_fraction) / r.stderr_combined : 0.0;
    r.pass = freq >= min_fraction;
    r.hard = false;  // asymptotic statement; finite-horizon bound is a calibration
    r.n_replicas = n;
    r.runtime_seconds = seconds_since(start);
    r.budget_seconds = 120.0;
    r.note = "soft check: fraction of runs absorbed by t=" + fmt(horizon);
    return r;
}

std::vector<CheckResult> check_ef0(const VerifyConfig& cfg, double p, double delta,
                                   const Graph& g0, double horizon, std::size_t n) {
    const auto start = Clock::now();
    const auto regime = theory::classify_regime(p, delta).regime;
    if (regime != theory::Regime::Supercritical)
        throw std::invalid_argument("check_ef0: requires the supercritical regime");

    const DegreeStats stats0 = degree_stats(g0);
    const std::vector<double> b0 = initial_binomial_moments(stats0);
    const double expected = theory::ef0_series(p, delta, b0);

    std::vector<double> law(stats0.histogram.size());
    for (std::size_t k = 0; k < law.size(); ++k) law[k] = stats0.f(k);
    DisasterBdParams zparams{p, delta, p};
    const ExtinctionEstimate est = z_extinction_frequency(zparams, law, horizon, n,
                                                          derive_seed(cfg.seed, kEf0), 2000,
                                                          cfg.threads);

    const double runtime = seconds_since(start);
    std::vector<CheckResult> out;
    CheckResult freq;
    freq.name = "ef0/extinction_frequency";
    freq.statistic = est.frequency;
    freq.expected = expected;
    freq.stderr_combined = est.se;
    freq.z_score = est.se > 0.0 ? (est.frequency - expected) / est.se : 0.0;
    const double tol = std::max(cfg.z_threshold * est.se, 0.02);
    freq.pass = std::abs(est.frequency - expected) <= tol;
    freq.n_replicas = n;
    freq.runtime_seconds = runtime;
    freq.budget_seconds = 180.0;
    freq.note = "tolerance max(" + fmt(cfg.z_threshold) + " SE, 0.02) = " + fmt(tol) +
                "; finite-horizon proxy for eventual extinction";
    out.push_back(std::move(freq));

    // exact algebraic route: 1 - sum_k F_k(0) * survival(k)
    double via_survival = 1.0;
    for (std::size_t k = 1; k < stats0.histogram.size(); ++k) {
        if (stats0.histogram[k] == 0) continue;
        via_survival -= stats0.f(k) *
                        theory::z_survival_series(p, delta, p, static_cast<unsigned>(k));
    }
    CheckResult algebra;
    algebra.name = "ef0/series_consistency";
    algebra.statistic = expected;
    algebra.expected = via_survival;
    algebra.pass = std::abs(expected - via_survival) <= 1e-12;
    algebra.z_score = 0.0;
    algebra.n_replicas = 0;
    algebra.runtime_seconds = runtime;
    algebra.budget_seconds = 180.0;
    algebra.note = "|ef0_series - (1 - sum F_k(0) survival_k)| <= 1e-12";
    out.push_back(std::move(algebra));
    return out;
}

namespace {

Graph builtin_edge() { return Graph::from_edges(2, {{1, 2}}); }
Graph builtin_path3() { return Graph::from_edges(3, {{1, 2}, {2, 3}}); }
Graph builtin_triangle() { return Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}}); }

void append(std::vector<CheckResult>& out, std::vector<CheckResult> more) {
    for (auto& r : more) out.push_back(std::move(r));
}

std::vector<CheckResult> suite_duality(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    const Graph edge = builtin_edge();
    const double times[] = {1.0, 2.0};
    const double xs[] = {0.25, 0.5, 1.0};
    append(out, check_duality(cfg, 0.5, 0.2, edge, times, scaled(200'000, cfg.scale), 5));
    append(out, check_genfun_duality(cfg, 0.5, 0.2, edge, times, xs, scaled(200'000, cfg.scale)));
    return out;
}

std::vector<CheckResult> suite_martingales(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    const double times[] = {0.0, 1.0, 2.0};
    const std::size_t n = scaled(100'000, cfg.scale);
    out.push_back(check_martingale(cfg, 0.5, 0.2, builtin_edge(),
                                   {MartingaleKind::BinomialMoment, 1, 1, 1.0}, times, n));
    out.push_back(check_martingale(cfg, 0.5, 0.3, builtin_edge(),
                                   {MartingaleKind::CliqueOverV, 2, 1, 1.0}, times, n));
    out.push_back(check_martingale(cfg, 0.6, 0.2, builtin_path3(),
                                   {MartingaleKind::InitialDegreeOverV, 1, 1, 1.0}, times, n));
    const double size_times[] = {0.0, 1.0, 2.0, 4.0};
    out.push_back(check_martingale(cfg, 0.5, 0.2, builtin_edge(),
                                   {MartingaleKind::GraphSizeGammaRatio, 1, 1, 1.0}, size_times,
                                   n));
    return out;
}

std::vector<CheckResult> suite_rates(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;

    // regime-1 survival decay of Z(p, delta, p) at p=0.3, delta=0.5
    {
        const double p = 0.3, delta = 0.5;
        const std::size_t n = scaled(1'000'000, cfg.scale);
        DisasterBdParams zp{p, delta, p};
        const double times[] = {4.0, 5.0, 6.0, 7.0, 8.0};
        const auto pmfs =
            z_run(zp, std::uint64_t{1}, times, n, derive_seed(cfg.seed, kRateZ), cfg.threads);
        std::vector<RatePoint> series;
        for (const auto& pmf : pmfs)
            series.push_back({pmf.t, pmf.survival_frequency(), pmf.survival_se()});
        CheckResult r = check_rate("rate/z_survival_regime1", series, -(1.0 + delta - 2.0 * p), 0.10);
        r.n_replicas = n;
        r.budget_seconds = 300.0;
        out.push_back(std::move(r));

        // prefactor of the fast-isolation decay: survival * e^{t(1+delta-2p)}
        // should sit flat at B_1(0) * c
        const CEstimate c = estimate_c(p, delta, 30.0, scaled(100'000, cfg.scale),
                                       derive_seed(cfg.seed, kPrefactorC), 0.1, cfg.threads);
        const double b1 = 1.0;  // single-edge start
        for (std::size_t i = 0; i < pmfs.size(); i += 2) {
            const double scale_t = std::exp(pmfs[i].t * (1.0 + delta - 2.0 * p));
            const double value = pmfs[i].survival_frequency() * scale_t;
            CheckResult pr;
            pr.name = "rate/survival_prefactor/t=" + fmt(pmfs[i].t);
            pr.statistic = value;
            pr.expected = b1 * c.c;
            pr.stderr_combined = std::sqrt(std::pow(pmfs[i].survival_se() * scale_t, 2) +
                                           std::pow(b1 * c.se, 2));
            pr.z_score = pr.stderr_combined > 0.0 ? (value - pr.expected) / pr.stderr_combined : 0.0;
            pr.pass = std::abs(value - pr.expected) <= 0.15 * std::abs(pr.expected);
            pr.n_replicas = n;
            pr.budget_seconds = 300.0;
            pr.note = "bare c = " + fmt(c.c) + " (se " + fmt(c.se) + "), B1(0)*c = " +
                      fmt(b1 * c.c) + ", tail contribution " + fmt(c.tail_contribution) +
                      "; 15% relative tolerance";
            out.push_back(std::move(pr));
        }
    }

    // B_2 growth at p=0.5, delta=0 from a triangle: rate -beta_2 = 0.25.
    // The mean solves dE[B_2]/dt = -g(2)E[B_2] + p E[B_1] exactly, so the
    // e^{-g(1)t} inflow component is subtracted before fitting; the raw
    // log-slope over a desk-scale window is still dominated by it.
    {
        const double p = 0.5, delta = 0.0;
        const std::size_t n = scaled(100'000, cfg.scale);
        const Graph tri = builtin_triangle();
        const SimParams params = base_params(p, delta);
        const double times[] = {2.0, 3.0, 4.0, 5.0, 6.0};
        MeanAcc acc = parallel_accumulate<MeanAcc>(
            n, MeanAcc(std::size(times)),
            [&](std::uint64_t r, MeanAcc& a) {
                walk_graph(tri, params, derive_seed(cfg.seed, kRateB2), r, times,
                           [&](std::size_t ti, const Graph& g) {
                               a.add(ti, binomial_moment(degree_stats(g), 2));
                           });
            },
            MeanAcc::merge, cfg.threads);
        const double g1 = theory::g_func(p, delta, 1.0);
        const double g2 = theory::g_func(p, delta, 2.0);
        const double b1_0 = 2.0, b2_0 = 1.0;  // triangle
        const double inflow = p * b1_0 / (g2 - g1);
        std::vector<RatePoint> series;
        for (std::size_t ti = 0; ti < std::size(times); ++ti)
            series.push_back({times[ti],
                              acc.mean(ti, n) - inflow * std::exp(-g1 * times[ti]),
                              acc.se(ti, n)});
        CheckResult r =
            check_rate("rate/B2_growth", series, -theory::beta_k(p, delta, 2), 0.15);
        r.n_replicas = n;
        r.budget_seconds = 300.0;
        r.note += "; transient-corrected series (B_2(0) - pB_1(0)/(g2-g1)) e^{-g(2)t} = " +
                  fmt(b2_0 - inflow) + " e^{" + fmt(-g2) + "t}";
        out.push_back(std::move(r));
    }

    // Cesaro moment-ratio diagnostic (slow regime); reported, never gating
    {
        const double p = 0.5, delta = 0.1;
        const CesaroDiagnostic diag = cesaro_ratio_diagnostic(
            p, delta, 1.0, 1, 10.0, scaled(100'000, cfg.scale), derive_seed(cfg.seed, kCesaro),
            0.1, cfg.threads);
        CheckResult r;
        r.name = "rate/cesaro_ratio_diagnostic";
        r.statistic = diag.time_average;
        r.expected = diag.ck;
        r.pass = true;
        r.hard = false;
        r.n_replicas = diag.n;
        r.budget_seconds = 120.0;
        r.note = "time-averaged E[X^2]/E[X] at t=10 vs Cesaro limit c_1; convergence is slow "
                 "and only conjectured pointwise, so this is informational";
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> suite_laws(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    const double mart_times[] = {0.0, 1.0, 2.0, 4.0};
    append(out, check_graph_size_law(cfg, 0.5, 0.2, builtin_edge(), 1.0, mart_times,
                                     scaled(100'000, cfg.scale)));
    const double deg_times[] = {0.0, 0.5, 1.0, 2.0, 6.0};
    append(out, check_degree_expectation(cfg, 0.6, 0.2, builtin_path3(), 1, deg_times,
                                         scaled(100'000, cfg.scale)));
    append(out, check_ef0(cfg, 0.8, 0.05, builtin_edge(), 30.0, scaled(30'000, cfg.scale)));
    return out;
}

std::vector<CheckResult> suite_extinction(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    out.push_back(check_extinction(cfg, 0.5, 2.5, builtin_edge(), ExtinctionKind::Edges, 10.0,
                                   scaled(1'000, cfg.scale)));
    out.push_back(check_extinction(cfg, 0.3, 0.5, builtin_edge(), ExtinctionKind::InitialDegrees,
                                   10.0, scaled(1'000, cfg.scale)));
    return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg) {
    if (suite == "duality") return suite_duality(cfg);
    if (suite == "martingales") return suite_martingales(cfg);
    if (suite == "rates") return suite_rates(cfg);
    if (suite == "laws") return suite_laws(cfg);
    if (suite == "extinction") return suite_extinction(cfg);
    if (suite == "all") {
        std::vector<CheckResult> out;
        append(out, suite_duality(cfg));
        append(out, suite_martingales(cfg));
        append(out, suite_rates(cfg));
        append(out, suite_laws(cfg));
        append(out, suite_extinction(cfg));
        return out;
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

bool all_hard_passed(std::span<const CheckResult> results) {
    for (const auto& r : results)
        if (r.hard && !r.pass) return false;
    return true;
}

}  // namespace pdgraph::verify
