#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "pdgraph/rng.hpp"

namespace pdgraph {

// ---------------------------------------------------------------------------
// Birth-death process with binomial disasters Z(b, d, p): from state z it
// jumps to z+1 at rate b z, to z-1 at rate d z, and to Binomial(z, p) at
// rate 1. State 0 is absorbing (disasters map 0 to 0).
// ---------------------------------------------------------------------------

struct DisasterBdParams {
    double b = 1.0;  // birth rate, > 0
    double d = 0.0;  // death rate, >= 0
    double p = 1.0;  // disaster survival probability, in [0,1]

    void validate() const;
};

struct DisasterBdState {
    std::uint64_t z = 0;
    double clock = 0.0;
};

DisasterBdState z_step(DisasterBdState state, const DisasterBdParams& params, Rng& rng);

// Initial condition: a fixed population size or a law over {0, 1, ...}.
using ZInitial = std::variant<std::uint64_t, std::vector<double>>;

struct EmpiricalPmf {
    double t = 0.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t n = 0;

    double pmf(std::size_t k) const {
        const double c = k < counts.size() ? static_cast<double>(counts[k]) : 0.0;
        return c / static_cast<double>(n);
    }
    double se(std::size_t k) const;
    double survival_frequency() const { return 1.0 - pmf(0); }
    double survival_se() const { return se(0); }
};

// Empirical law of Z_t at each requested time (one pass per replica).
std::vector<EmpiricalPmf> z_run(const DisasterBdParams& params, const ZInitial& init,
                                std::span<const double> times, std::size_t n,
                                std::uint64_t seed, unsigned threads = 0);

EmpiricalPmf z_run(const DisasterBdParams& params, const ZInitial& init, double t,
                   std::size_t n, std::uint64_t seed, unsigned threads = 0);

struct ExtinctionEstimate {
    double frequency = 0.0;
    double se = 0.0;
    std::uint64_t n = 0;
};

// Fraction of replicas absorbed at 0 by the horizon. Paths reaching z_cap are
// declared survivors and stopped early; in the supercritical regimes this is
// where extinction from z_cap individuals is astronomically unlikely.
ExtinctionEstimate z_extinction_frequency(const DisasterBdParams& params, const ZInitial& init,
                                          double horizon, std::size_t n, std::uint64_t seed,
                                          std::uint64_t z_cap = 2000, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Piecewise-deterministic Markov process X on [0,1]: drift
// dx/dt = p x (1-x) - delta x between jumps, and rate-1 jumps x -> p x.
// ---------------------------------------------------------------------------

struct PdmpState {
    double x = 0.0;
    double clock = 0.0;
};

// Closed-form solution of the drift ODE after time s from x0. The logistic
// form degenerates at p = delta to pure quadratic decay x0/(1 + p x0 s); a
// series branch near p = delta avoids the 0/0 cancellation.
double pdmp_flow(double p, double delta, double x0, double s);

// One jump cycle: flow over an Exp(1) waiting time, then multiply by p.
PdmpState pdmp_step(PdmpState state, double p, double delta, Rng& rng);

// Exact draw of X_t given X_0 = x0 (flow between exponential jump times).
double pdmp_sample_at(double p, double delta, double x0, double t, Rng& rng);

struct MomentEstimate {
    double t = 0.0;
    unsigned k = 1;
    double mean = 0.0;
    double se = 0.0;
    std::uint64_t n = 0;
};

// Monte Carlo moments E_x[X_t^k] for k = 1..kmax at each time, shared paths.
std::vector<MomentEstimate> x_moments(double p, double delta, double x0, unsigned kmax,
                                      std::span<const double> times, std::size_t n,
                                      std::uint64_t seed, unsigned threads = 0);

MomentEstimate x_moment(double p, double delta, double x0, unsigned k, double t, std::size_t n,
                        std::uint64_t seed, unsigned threads = 0);

// Estimate of E[1 - H_x(t)] = sum_l B_l(0) (-1)^{l+1} E_x[X_t^l], a finite
// sum over the initial binomial moments b0 = (B_1(0), ..., B_K(0)).
MomentEstimate ix_series(double p, double delta, double x0, double t, std::span<const double> b0,
                         std::size_t n, std::uint64_t seed, unsigned threads = 0);

struct CEstimate {
    double c = 0.0;     // exp(-p * integral), from x0 = 1
    double se = 0.0;    // block standard error of c
    double integral = 0.0;
    double tail_contribution = 0.0;  // last-interval share of p * integral
    double truncation_time = 0.0;
    double grid_step = 0.0;
    std::uint64_t n = 0;
};

// Constant c of the fast-isolation regime: trapezoidal quadrature of the
// Monte Carlo ratio E_1[X_s^2]/E_1[X_s] on [0, T], exponentiated. Requires
// delta > p - p log(1/p), where the integrand decays exponentially.
CEstimate estimate_c(double p, double delta, double truncation_time, std::size_t n,
                     std::uint64_t seed, double grid_step = 0.1, unsigned threads = 0);

struct CesaroDiagnostic {
    double t = 0.0;
    double time_average = 0.0;  // (1/t) integral of E[X^{k+1}]/E[X^k]
    double ck = 0.0;            // closed-form Cesaro limit, for reference
    unsigned k = 1;
    std::uint64_t n = 0;
};

// Time-averaged moment ratio against the closed-form Cesaro constant. This is
// reported as a diagnostic only: pointwise convergence of the ratio is
// conjectural, and the Cesaro limit is approached slowly.
CesaroDiagnostic cesaro_ratio_diagnostic(double p, double delta, double x0, unsigned k, double t,
                                         std::size_t n, std::uint64_t seed,
                                         double grid_step = 0.1, unsigned threads = 0);

}  // namespace pdgraph
