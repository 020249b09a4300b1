#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace pdgraph::theory {

enum class Regime { FastIsolation, SlowIsolation, Supercritical };

std::string to_string(Regime r);

// Phase classification of PD(p, delta) with the quantities attached to it.
// Regime boundaries (inclusive on the side of the faster regime):
//   FastIsolation:  delta >= p - p log(1/p)
//   SlowIsolation:  p - p log(1/p) > delta >= p - log(1/p)
//   Supercritical:  delta < p - log(1/p)
struct RegimeReport {
    double p = 0;
    double delta = 0;
    Regime regime = Regime::FastIsolation;
    double threshold_fast = 0;   // p - p log(1/p)
    double threshold_super = 0;  // p - log(1/p)
    std::optional<double> gamma;            // log(1/p)/(p-delta), when p != delta
    std::optional<double> xi;               // argmax of g, in the slow regime
    std::optional<double> fplus_exponent;   // decay rate of E[F_+], regimes 1-2
};

// g(x) = 1 + delta*x - p*x - p^x. Strictly concave in x; g(0) = 0.
double g_func(double p, double delta, double x);

// Unique root of p e^p = 1, to full double precision.
double p_star();

RegimeReport classify_regime(double p, double delta);

// Decay rate of B_k: beta_k = min(g(1), g(k)) = min(1+delta-2p, 1+delta*k-p*k-p^k).
double beta_k(double p, double delta, unsigned k);

// Growth rate of C_k: k p^{k-1} - delta k(k-1)/2.
double clique_rate(double p, double delta, unsigned k);

// Cliques of size k die out iff delta >= 2 p^{k-1} / (k-1), equivalently
// clique_rate <= 0.
bool clique_extinct(double p, double delta, unsigned k);

// Cesaro limit of E_x[X^{k+1}]/E_x[X^k]:
//   c_k = (log(1/(gamma p^k)) + gamma p^k - 1) / (k gamma p).
// The limit statement applies in the slow-isolation range; the expression is
// evaluated whenever gamma is defined and positive.
double cesaro_ck(double p, double delta, unsigned k);

// E[F_0(infinity)] in the supercritical regime, from the initial binomial
// moments b0 = (B_1(0), ..., B_K(0)). Finite alternating sum.
double ef0_series(double p, double delta, std::span<const double> b0);

// Survival probability of Z(b,d,p) started from k individuals, for
// b - d > log(1/p). k = 0 gives 0.
double z_survival_series(double b, double d, double p, unsigned k);

// Decay rate of E[F_+]: 1+delta-2p (fast), 1 - (1/gamma)(1+log gamma) (slow),
// none in the supercritical regime.
std::optional<double> fplus_exponent(double p, double delta);

// E[e^{-t(p-delta)} D_i(t)] = d0 (1 + (1 - e^{-t}) p / n0), exact for all t.
double expected_degree_t(double d0, double p, std::size_t n0, double t);

// Limit of the above: d0 (1 + p/n0).
double expected_degree_limit(double d0, double p, std::size_t n0);

// Gamma(n+r)/Gamma(n) via log-gamma; requires n >= 1 and n + r > 0.
double gamma_ratio(double n, double r);

}  // namespace pdgraph::theory
