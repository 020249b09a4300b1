#pragma once

#include <cstdint>
#include <vector>

#include "pdgraph/graph.hpp"

namespace pdgraph {

// Degree histogram of a graph snapshot. histogram[k] counts vertices of
// degree k; frequencies F_k = histogram[k] / n_vertices.
struct DegreeStats {
    std::vector<std::uint64_t> histogram;
    std::size_t n_vertices = 0;

    std::size_t max_degree() const { return histogram.empty() ? 0 : histogram.size() - 1; }

    double f(std::size_t k) const {
        if (k >= histogram.size()) return 0.0;
        return static_cast<double>(histogram[k]) / static_cast<double>(n_vertices);
    }

    double f_plus() const { return 1.0 - f(0); }
};

struct CliqueCount {
    unsigned k = 0;
    std::uint64_t count = 0;
};

DegreeStats degree_stats(const Graph& g);

// C(n, k) in exact integer arithmetic; throws std::overflow_error if the
// value does not fit in 64 bits.
std::uint64_t binomial_coeff(std::uint64_t n, std::uint64_t k);

// |V| * B_k = sum_v C(deg(v), k), the number of star-like subgraphs with a
// center and k leaves. Exact.
std::uint64_t star_count(const DegreeStats& stats, unsigned k);

// k-th binomial moment B_k = sum_{l >= k} C(l, k) F_l.
double binomial_moment(const DegreeStats& stats, unsigned k);

// B_1 .. B_maxdeg as doubles (exact integer numerators over n).
std::vector<double> initial_binomial_moments(const DegreeStats& stats);

// Number of k-cliques, 2 <= k <= 12, by ordered neighborhood intersection.
CliqueCount count_cliques(const Graph& g, unsigned k);

// H_x = sum_k (1-x)^k F_k, the generating-function value at x in [0,1].
double generating_function(const DegreeStats& stats, double x);

// Degrees D_i of the initial vertices i = 1..n0.
std::vector<std::uint64_t> initial_degrees(const Graph& g, std::size_t n0);

}  // namespace pdgraph
