#include "pdgraph/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace pdgraph::theory {

namespace {

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
}

void check_p_delta(double p, double delta) {
    check_p(p);
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::FastIsolation: return "FAST_ISOLATION";
        case Regime::SlowIsolation: return "SLOW_ISOLATION";
        case Regime::Supercritical: return "SUPERCRITICAL";
    }
    return "UNKNOWN";
}

double g_func(double p, double delta, double x) {
    check_p(p);
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
    if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
    return 1.0 + delta * x - p * x - std::pow(p, x);
}

double p_star() {
    // Bisection of p e^p - 1 on [0.5, 0.6]; converges to the last bit.
    static const double value = [] {
        double lo = 0.5, hi = 0.6;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (mid * std::exp(mid) - 1.0 < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return value;
}

RegimeReport classify_regime(double p, double delta) {
    check_p_delta(p, delta);
    RegimeReport r;
    r.p = p;
    r.delta = delta;
    const double log_inv_p = std::log(1.0 / p);
    r.threshold_fast = p - p * log_inv_p;
    r.threshold_super = p - log_inv_p;
    if (p != delta) r.gamma = log_inv_p / (p - delta);

    if (delta >= r.threshold_fast) {
        r.regime = Regime::FastIsolation;
        r.fplus_exponent = 1.0 + delta - 2.0 * p;
    } else if (delta >= r.threshold_super) {
        r.regime = Regime::SlowIsolation;
        const double gamma = *r.gamma;  // p - delta > p log(1/p) > 0 here
        r.xi = std::log(gamma) / log_inv_p;
        r.fplus_exponent = 1.0 - (1.0 + std::log(gamma)) / gamma;
    } else {
        r.regime = Regime::Supercritical;
    }
    return r;
}

double beta_k(double p, double delta, unsigned k) {
    if (k < 1) throw std::invalid_argument("beta_k: k must be >= 1");
    return std::min(g_func(p, delta, 1.0), g_func(p, delta, static_cast<double>(k)));
}

double clique_rate(double p, double delta, unsigned k) {
    check_p_delta(p, delta);
    if (k < 2) throw std::invalid_argument("clique_rate: k must be >= 2");
    const double kd = static_cast<double>(k);
    return kd * std::pow(p, kd - 1.0) - delta * kd * (kd - 1.0) / 2.0;
}

bool clique_extinct(double p, double delta, unsigned k) {
    check_p_delta(p, delta);
    if (k < 2) throw std::invalid_argument("clique_extinct: k must be >= 2");
    return delta >= 2.0 * std::pow(p, static_cast<double>(k - 1)) / static_cast<double>(k - 1);
}

double cesaro_ck(double p, double delta, unsigned k) {
    check_p_delta(p, delta);
    if (k < 1) throw std::invalid_argument("cesaro_ck: k must be >= 1");
    if (p == delta) throw std::invalid_argument("cesaro_ck: gamma undefined for p == delta");
    const double gamma = std::log(1.0 / p) / (p - delta);
    if (!(gamma > 0.0)) throw std::invalid_argument("cesaro_ck: requires p > delta");
    const double gpk = gamma * std::pow(p, static_cast<double>(k));
    return (std::log(1.0 / gpk) + gpk - 1.0) / (static_cast<double>(k) * gamma * p);
}

double ef0_series(double p, double delta, std::span<const double> b0) {
    check_p_delta(p, delta);
    const double log_inv_p = std::log(1.0 / p);
    if (!(delta < p - log_inv_p))
        throw std::invalid_argument("ef0_series: requires the supercritical regime");
    const double lead = 1.0 - delta / p - log_inv_p / p;
    double sum = 0.0;
    double product = 1.0;  // prod_{l=1}^{k-1} (1 - delta/p - (1-p^l)/(p l)), empty = 1
    double sign = 1.0;
    for (std::size_t k = 1; k <= b0.size(); ++k) {
        sum += b0[k - 1] * sign * product;
        const double l = static_cast<double>(k);
        product *= 1.0 - delta / p - (1.0 - std::pow(p, l)) / (p * l);
        sign = -sign;
    }
    return 1.0 - lead * sum;
}

double z_survival_series(double b, double d, double p, unsigned k) {
    if (!(b > 0.0)) throw std::invalid_argument("z_survival_series: b must be > 0");
    if (!(d >= 0.0)) throw std::invalid_argument("z_survival_series: d must be >= 0");
    check_p(p);
    const double log_inv_p = std::log(1.0 / p);
    if (!(b - d > log_inv_p))
        throw std::invalid_argument("z_survival_series: requires b - d > log(1/p)");
    if (k == 0) return 0.0;
    const double lead = 1.0 - (d + log_inv_p) / b;
    double sum = 0.0;
    double product = 1.0;  // prod_{m=1}^{l-1} (1 - (d m + 1 - p^m)/(b m))
    double sign = 1.0;
    for (unsigned l = 1; l <= k; ++l) {
        // C(k, l) stays modest for the initial degrees this is used with
        double binom = 1.0;
        for (unsigned i = 1; i <= l; ++i)
            binom = binom * static_cast<double>(k - l + i) / static_cast<double>(i);
        sum += binom * sign * product;
        const double m = static_cast<double>(l);
        product *= 1.0 - (d * m + 1.0 - std::pow(p, m)) / (b * m);
        sign = -sign;
    }
    return lead * sum;
}

std::optional<double> fplus_exponent(double p, double delta) {
    return classify_regime(p, delta).fplus_exponent;
}

double expected_degree_t(double d0, double p, std::size_t n0, double t) {
    if (n0 < 1) throw std::invalid_argument("expected_degree_t: n0 must be >= 1");
    if (d0 < 0.0) throw std::invalid_argument("expected_degree_t: d0 must be >= 0");
    return d0 * (1.0 + (1.0 - std::exp(-t)) * p / static_cast<double>(n0));
}

double expected_degree_limit(double d0, double p, std::size_t n0) {
    if (n0 < 1) throw std::invalid_argument("expected_degree_limit: n0 must be >= 1");
    return d0 * (1.0 + p / static_cast<double>(n0));
}

double gamma_ratio(double n, double r) {
    if (!(n >= 1.0)) throw std::invalid_argument("gamma_ratio: n must be >= 1");
    if (!(n + r > 0.0)) throw std::invalid_argument("gamma_ratio: pole at n + r <= 0");
    return std::exp(std::lgamma(n + r) - std::lgamma(n));
}

}  // namespace pdgraph::theory
