#include "pdgraph/dual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdgraph/parallel.hpp"
#include "pdgraph/theory.hpp"

namespace pdgraph {

void DisasterBdParams::validate() const {
    if (!(b > 0.0)) throw std::invalid_argument("b must be > 0");
    if (!(d >= 0.0)) throw std::invalid_argument("d must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
}

DisasterBdState z_step(DisasterBdState state, const DisasterBdParams& params, Rng& rng) {
    const double z = static_cast<double>(state.z);
    const double total = (params.b + params.d) * z + 1.0;
    state.clock += rng.exponential(total);
    const double u = rng.uniform01() * total;
    if (u < params.b * z) {
        ++state.z;
    } else if (u < (params.b + params.d) * z) {
        --state.z;
    } else {
        state.z = rng.binomial(state.z, params.p);
    }
    return state;
}

namespace {

std::uint64_t sample_initial(const ZInitial& init, Rng& rng) {
    if (const auto* fixed = std::get_if<std::uint64_t>(&init)) return *fixed;
    const auto& pmf = std::get<std::vector<double>>(init);
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        acc += pmf[k];
        if (u < acc) return k;
    }
    return pmf.empty() ? 0 : pmf.size() - 1;
}

void check_initial(const ZInitial& init) {
    if (const auto* pmf = std::get_if<std::vector<double>>(&init)) {
        double sum = 0.0;
        for (double q : *pmf) {
            if (!(q >= 0.0)) throw std::invalid_argument("initial law has negative mass");
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("initial law must sum to 1");
    }
}

}  // namespace

double EmpiricalPmf::se(std::size_t k) const {
    const double q = pmf(k);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(n));
}

std::vector<EmpiricalPmf> z_run(const DisasterBdParams& params, const ZInitial& init,
                                std::span<const double> times, std::size_t n,
                                std::uint64_t seed, unsigned threads) {
    params.validate();
    check_initial(init);
    if (n < 1) throw std::invalid_argument("z_run: n must be >= 1");
    if (!std::is_sorted(times.begin(), times.end()))
        throw std::invalid_argument("z_run: times must be sorted");
    for (double t : times)
        if (!(t >= 0.0)) throw std::invalid_argument("z_run: times must be >= 0");

    struct Acc {
        std::vector<std::vector<std::uint64_t>> counts;
    };
    Acc init_acc;
    init_acc.counts.resize(times.size());

    auto record = [](std::vector<std::uint64_t>& counts, std::uint64_t z) {
        if (z >= counts.size()) counts.resize(z + 1, 0);
        ++counts[z];
    };

    Acc total = parallel_accumulate<Acc>(
        n, init_acc,
        [&](std::uint64_t r, Acc& acc) {
            Rng rng(seed, r);
            DisasterBdState state{sample_initial(init, rng), 0.0};
            std::size_t ti = 0;
            // peek event times so each requested time sees the pre-event state
            while (ti < times.size()) {
                if (state.z == 0) {  // absorbing
                    for (; ti < times.size(); ++ti) record(acc.counts[ti], 0);
                    break;
                }
                const double total_rate = (params.b + params.d) * static_cast<double>(state.z) + 1.0;
                const double t_next = state.clock + rng.exponential(total_rate);
                while (ti < times.size() && times[ti] < t_next) {
                    record(acc.counts[ti], state.z);
                    ++ti;
                }
                if (ti >= times.size()) break;
                state.clock = t_next;
                const double u = rng.uniform01() * total_rate;
                const double z = static_cast<double>(state.z);
                if (u < params.b * z) {
                    ++state.z;
                } else if (u < (params.b + params.d) * z) {
                    --state.z;
                } else {
                    state.z = rng.binomial(state.z, params.p);
                }
            }
        },
        [](Acc& a, const Acc& b) {
            for (std::size_t i = 0; i < a.counts.size(); ++i) {
                if (b.counts[i].size() > a.counts[i].size()) a.counts[i].resize(b.counts[i].size(), 0);
                for (std::size_t k = 0; k < b.counts[i].size(); ++k) a.counts[i][k] += b.counts[i][k];
            }
        },
        threads);

    std::vector<EmpiricalPmf> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i].t = times[i];
        out[i].counts = std::move(total.counts[i]);
        out[i].n = n;
    }
    return out;
}

EmpiricalPmf z_run(const DisasterBdParams& params, const ZInitial& init, double t, std::size_t n,
                   std::uint64_t seed, unsigned threads) {
    const double times[1] = {t};
    return z_run(params, init, times, n, seed, threads)[0];
}

ExtinctionEstimate z_extinction_frequency(const DisasterBdParams& params, const ZInitial& init,
                                          double horizon, std::size_t n, std::uint64_t seed,
                                          std::uint64_t z_cap, unsigned threads) {
    params.validate();
    check_initial(init);
    if (n < 1) throw std::invalid_argument("z_extinction_frequency: n must be >= 1");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");

    const std::uint64_t extinct = parallel_accumulate<std::uint64_t>(
        n, 0,
        [&](std::uint64_t r, std::uint64_t& count) {
            Rng rng(seed, r);
            DisasterBdState state{sample_initial(init, rng), 0.0};
            while (state.z > 0 && state.z < z_cap && state.clock <= horizon)
                state = z_step(state, params, rng);
            if (state.z == 0 && state.clock <= horizon) ++count;
        },
        [](std::uint64_t& a, const std::uint64_t& b) { a += b; }, threads);

    ExtinctionEstimate est;
    est.n = n;
    est.frequency = static_cast<double>(extinct) / static_cast<double>(n);
    est.se = std::sqrt(est.frequency * (1.0 - est.frequency) / static_cast<double>(n));
    return est;
}

// ---------------------------------------------------------------------------
// PDMP
// ---------------------------------------------------------------------------

double pdmp_flow(double p, double delta, double x0, double s) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pdmp_flow: p must be in [0,1]");
    if (!(delta >= 0.0)) throw std::invalid_argument("pdmp_flow: delta must be >= 0");
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("pdmp_flow: x0 must be in [0,1]");
    if (!(s >= 0.0)) throw std::invalid_argument("pdmp_flow: s must be >= 0");
    if (x0 == 0.0 || s == 0.0) return x0;

    const double a = p - delta;
    double growth;  // e^{a s}
    double phi;     // (e^{a s} - 1) / a
    if (std::abs(a) < 1e-12) {
        const double as = a * s;
        phi = s * (1.0 + as / 2.0 + as * as / 6.0);
        growth = 1.0 + as * (1.0 + as / 2.0);
    } else {
        growth = std::exp(a * s);
        phi = std::expm1(a * s) / a;
    }
    const double x = x0 * growth / (1.0 + p * x0 * phi);
    return std::clamp(x, 0.0, 1.0);
}

PdmpState pdmp_step(PdmpState state, double p, double delta, Rng& rng) {
    const double wait = rng.exponential(1.0);
    state.x = p * pdmp_flow(p, delta, state.x, wait);
    state.clock += wait;
    return state;
}

double pdmp_sample_at(double p, double delta, double x0, double t, Rng& rng) {
    double x = x0;
    double remaining = t;
    while (true) {
        const double wait = rng.exponential(1.0);
        if (wait > remaining) return pdmp_flow(p, delta, x, remaining);
        x = p * pdmp_flow(p, delta, x, wait);
        remaining -= wait;
    }
}

namespace {

struct SumAcc {
    std::vector<double> sum;
    std::vector<double> sumsq;
};

// Evaluates fn(time_index, x_at_time) along exact paths from x0.
template <typename Visit>
void walk_path(double p, double delta, double x0, std::span<const double> times, Rng& rng,
               Visit visit) {
    double x = x0;
    double t_cur = 0.0;
    std::size_t ti = 0;
    double next_jump = t_cur + rng.exponential(1.0);
    while (ti < times.size()) {
        if (times[ti] <= next_jump) {
            visit(ti, pdmp_flow(p, delta, x, times[ti] - t_cur));
            ++ti;
        } else {
            x = p * pdmp_flow(p, delta, x, next_jump - t_cur);
            t_cur = next_jump;
            next_jump = t_cur + rng.exponential(1.0);
        }
    }
}

void check_pdmp_args(double p, double delta, double x0, std::size_t n) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("x0 must be in [0,1]");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
}

MomentEstimate finish_estimate(double t, unsigned k, double sum, double sumsq, std::uint64_t n) {
    MomentEstimate est;
    est.t = t;
    est.k = k;
    est.n = n;
    const double nd = static_cast<double>(n);
    est.mean = sum / nd;
    const double var = std::max(0.0, sumsq / nd - est.mean * est.mean);
    est.se = std::sqrt(var / nd);
    return est;
}

}  // namespace

std::vector<MomentEstimate> x_moments(double p, double delta, double x0, unsigned kmax,
                                      std::span<const double> times, std::size_t n,
                                      std::uint64_t seed, unsigned threads) {
    check_pdmp_args(p, delta, x0, n);
    if (kmax < 1) throw std::invalid_argument("x_moments: kmax must be >= 1");
    if (!std::is_sorted(times.begin(), times.end()))
        throw std::invalid_argument("x_moments: times must be sorted");

    const std::size_t cells = times.size() * kmax;
    SumAcc init{std::vector<double>(cells, 0.0), std::vector<double>(cells, 0.0)};
    SumAcc total = parallel_accumulate<SumAcc>(
        n, init,
        [&](std::uint64_t r, SumAcc& acc) {
            Rng rng(seed, r);
            walk_path(p, delta, x0, times, rng, [&](std::size_t ti, double x) {
                double power = 1.0;
                for (unsigned k = 1; k <= kmax; ++k) {
                    power *= x;
                    const std::size_t cell = ti * kmax + (k - 1);
                    acc.sum[cell] += power;
                    acc.sumsq[cell] += power * power;
                }
            });
        },
        [](SumAcc& a, const SumAcc& b) {
            for (std::size_t i = 0; i < a.sum.size(); ++i) {
                a.sum[i] += b.sum[i];
                a.sumsq[i] += b.sumsq[i];
            }
        },
        threads);

    std::vector<MomentEstimate> out;
    out.reserve(cells);
    for (std::size_t ti = 0; ti < times.size(); ++ti)
        for (unsigned k = 1; k <= kmax; ++k) {
            const std::size_t cell = ti * kmax + (k - 1);
            out.push_back(finish_estimate(times[ti], k, total.sum[cell], total.sumsq[cell], n));
        }
    return out;
}

MomentEstimate x_moment(double p, double delta, double x0, unsigned k, double t, std::size_t n,
                        std::uint64_t seed, unsigned threads) {
    if (k < 1) throw std::invalid_argument("x_moment: k must be >= 1");
    const double times[1] = {t};
    auto grid = x_moments(p, delta, x0, k, times, n, seed, threads);
    return grid[k - 1];
}

MomentEstimate ix_series(double p, double delta, double x0, double t, std::span<const double> b0,
                         std::size_t n, std::uint64_t seed, unsigned threads) {
    check_pdmp_args(p, delta, x0, n);
    const double times[1] = {t};
    SumAcc init{std::vector<double>(1, 0.0), std::vector<double>(1, 0.0)};
    SumAcc total = parallel_accumulate<SumAcc>(
        n, init,
        [&](std::uint64_t r, SumAcc& acc) {
            Rng rng(seed, r);
            walk_path(p, delta, x0, times, rng, [&](std::size_t, double x) {
                double y = 0.0;
                double power = 1.0;
                double sign = 1.0;
                for (const double b : b0) {
                    power *= x;
                    y += b * sign * power;
                    sign = -sign;
                }
                acc.sum[0] += y;
                acc.sumsq[0] += y * y;
            });
        },
        [](SumAcc& a, const SumAcc& b) {
            a.sum[0] += b.sum[0];
            a.sumsq[0] += b.sumsq[0];
        },
        threads);
    return finish_estimate(t, 1, total.sum[0], total.sumsq[0], n);
}

namespace {

struct BlockedRatioAcc {
    // per block: sum X, sum X^2 at each grid time, plus replica count
    std::vector<double> sx;
    std::vector<double> sxx;
    std::vector<std::uint64_t> count;
};

constexpr std::size_t kRatioBlocks = 16;

BlockedRatioAcc ratio_sums(double p, double delta, double x0, const std::vector<double>& grid,
                           std::size_t n, std::uint64_t seed, unsigned threads) {
    const std::size_t m = grid.size();
    BlockedRatioAcc init{std::vector<double>(kRatioBlocks * m, 0.0),
                         std::vector<double>(kRatioBlocks * m, 0.0),
                         std::vector<std::uint64_t>(kRatioBlocks, 0)};
    return parallel_accumulate<BlockedRatioAcc>(
        n, init,
        [&](std::uint64_t r, BlockedRatioAcc& acc) {
            Rng rng(seed, r);
            const std::size_t block = r % kRatioBlocks;
            ++acc.count[block];
            walk_path(p, delta, x0, grid, rng, [&](std::size_t ti, double x) {
                acc.sx[block * m + ti] += x;
                acc.sxx[block * m + ti] += x * x;
            });
        },
        [](BlockedRatioAcc& a, const BlockedRatioAcc& b) {
            for (std::size_t i = 0; i < a.sx.size(); ++i) {
                a.sx[i] += b.sx[i];
                a.sxx[i] += b.sxx[i];
            }
            for (std::size_t i = 0; i < kRatioBlocks; ++i) a.count[i] += b.count[i];
        },
        threads);
}

std::vector<double> make_grid(double t_end, double step) {
    std::vector<double> grid;
    for (double t = 0.0; t < t_end; t += step) grid.push_back(t);
    grid.push_back(t_end);
    return grid;
}

double trapezoid_ratio_integral(const std::vector<double>& grid, const std::vector<double>& ratio) {
    double integral = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        integral += 0.5 * (ratio[i - 1] + ratio[i]) * (grid[i] - grid[i - 1]);
    return integral;
}

}  // namespace

CEstimate estimate_c(double p, double delta, double truncation_time, std::size_t n,
                     std::uint64_t seed, double grid_step, unsigned threads) {
    check_pdmp_args(p, delta, 1.0, n);
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("estimate_c: p must be in (0,1)");
    const double threshold = p - p * std::log(1.0 / p);
    if (!(delta > threshold))
        throw std::invalid_argument(
            "estimate_c: requires the fast-isolation interior delta > p - p log(1/p)");
    if (!(truncation_time > 0.0) || !(grid_step > 0.0))
        throw std::invalid_argument("estimate_c: T and grid_step must be > 0");

    const std::vector<double> grid = make_grid(truncation_time, grid_step);
    const std::size_t m = grid.size();
    const BlockedRatioAcc acc = ratio_sums(p, delta, 1.0, grid, n, seed, threads);

    // pooled ratio and integral
    std::vector<double> ratio(m, 0.0);
    for (std::size_t ti = 0; ti < m; ++ti) {
        double sx = 0.0, sxx = 0.0;
        for (std::size_t blk = 0; blk < kRatioBlocks; ++blk) {
            sx += acc.sx[blk * m + ti];
            sxx += acc.sxx[blk * m + ti];
        }
        ratio[ti] = sxx / sx;  // X > 0 along every path, so sx > 0
    }
    const double integral = trapezoid_ratio_integral(grid, ratio);

    CEstimate est;
    est.c = std::exp(-p * integral);
    est.integral = integral;
    est.tail_contribution =
        p * 0.5 * (ratio[m - 2] + ratio[m - 1]) * (grid[m - 1] - grid[m - 2]);
    est.truncation_time = truncation_time;
    est.grid_step = grid_step;
    est.n = n;

    // block jackknife-style spread for a standard error on c
    std::vector<double> block_c;
    for (std::size_t blk = 0; blk < kRatioBlocks; ++blk) {
        if (acc.count[blk] == 0) continue;
        std::vector<double> r(m, 0.0);
        bool ok = true;
        for (std::size_t ti = 0; ti < m && ok; ++ti) {
            const double sx = acc.sx[blk * m + ti];
            ok = sx > 0.0;
            if (ok) r[ti] = acc.sxx[blk * m + ti] / sx;
        }
        if (ok) block_c.push_back(std::exp(-p * trapezoid_ratio_integral(grid, r)));
    }
    if (block_c.size() > 1) {
        double mean = 0.0;
        for (double c : block_c) mean += c;
        mean /= static_cast<double>(block_c.size());
        double var = 0.0;
        for (double c : block_c) var += (c - mean) * (c - mean);
        var /= static_cast<double>(block_c.size() - 1);
        est.se = std::sqrt(var / static_cast<double>(block_c.size()));
    }
    return est;
}

CesaroDiagnostic cesaro_ratio_diagnostic(double p, double delta, double x0, unsigned k, double t,
                                         std::size_t n, std::uint64_t seed, double grid_step,
                                         unsigned threads) {
    check_pdmp_args(p, delta, x0, n);
    if (k < 1) throw std::invalid_argument("cesaro_ratio_diagnostic: k must be >= 1");
    if (!(t > 0.0) || !(grid_step > 0.0))
        throw std::invalid_argument("cesaro_ratio_diagnostic: t and grid_step must be > 0");

    const std::vector<double> grid = make_grid(t, grid_step);
    const std::size_t m = grid.size();

    // moment sums of order k and k+1 on the grid
    SumAcc init{std::vector<double>(2 * m, 0.0), std::vector<double>(1, 0.0)};
    SumAcc total = parallel_accumulate<SumAcc>(
        n, init,
        [&](std::uint64_t r, SumAcc& acc) {
            Rng rng(seed, r);
            walk_path(p, delta, x0, grid, rng, [&](std::size_t ti, double x) {
                const double xk = std::pow(x, static_cast<double>(k));
                acc.sum[2 * ti] += xk;
                acc.sum[2 * ti + 1] += xk * x;
            });
        },
        [](SumAcc& a, const SumAcc& b) {
            for (std::size_t i = 0; i < a.sum.size(); ++i) a.sum[i] += b.sum[i];
        },
        threads);

    std::vector<double> ratio(m, 0.0);
    for (std::size_t ti = 0; ti < m; ++ti) ratio[ti] = total.sum[2 * ti + 1] / total.sum[2 * ti];

    CesaroDiagnostic diag;
    diag.t = t;
    diag.k = k;
    diag.n = n;
    diag.time_average = trapezoid_ratio_integral(grid, ratio) / t;
    diag.ck = theory::cesaro_ck(p, delta, k);
    return diag;
}

}  // namespace pdgraph
