#include "pdgraph/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pdgraph {

DegreeStats degree_stats(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("degree_stats: empty graph");
    DegreeStats stats;
    stats.n_vertices = n;
    std::size_t maxdeg = 0;
    for (VertexId v = 1; v <= n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    stats.histogram.assign(maxdeg + 1, 0);
    for (VertexId v = 1; v <= n; ++v) ++stats.histogram[g.degree(v)];
    return stats;
}

std::uint64_t binomial_coeff(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // integral at each step in this order
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial_coeff overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t star_count(const DegreeStats& stats, unsigned k) {
    if (k == 0) throw std::invalid_argument("star_count: k must be >= 1");
    unsigned __int128 total = 0;
    for (std::size_t deg = k; deg < stats.histogram.size(); ++deg) {
        if (stats.histogram[deg] == 0) continue;
        total += static_cast<unsigned __int128>(binomial_coeff(deg, k)) * stats.histogram[deg];
        if (total > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("star_count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

double binomial_moment(const DegreeStats& stats, unsigned k) {
    if (k == 0) throw std::invalid_argument("binomial_moment: k must be >= 1");
    return static_cast<double>(star_count(stats, k)) / static_cast<double>(stats.n_vertices);
}

std::vector<double> initial_binomial_moments(const DegreeStats& stats) {
    std::vector<double> b;
    for (unsigned k = 1; k <= stats.max_degree(); ++k) b.push_back(binomial_moment(stats, k));
    return b;
}

namespace {

// Extends a partial clique: cands holds vertices adjacent to every member so
// far, restricted to ids above the last member. `remaining` more vertices
// are needed.
std::uint64_t extend_cliques(const Graph& g, const std::vector<VertexId>& cands,
                             unsigned remaining) {
    if (remaining == 1) return cands.size();
    std::uint64_t total = 0;
    std::vector<VertexId> next;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const VertexId v = cands[i];
        const auto& adj = g.neighbors(v);
        next.clear();
        std::set_intersection(cands.begin() + i + 1, cands.end(),
                              std::upper_bound(adj.begin(), adj.end(), v), adj.end(),
                              std::back_inserter(next));
        if (next.size() + 1 >= remaining) total += extend_cliques(g, next, remaining - 1);
    }
    return total;
}

}  // namespace

CliqueCount count_cliques(const Graph& g, unsigned k) {
    if (k < 2 || k > 12) throw std::invalid_argument("count_cliques: k must be in [2,12]");
    if (k == 2) return {k, g.edge_count()};
    std::uint64_t total = 0;
    std::vector<VertexId> cands;
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
        const auto& adj = g.neighbors(v);
        cands.assign(std::upper_bound(adj.begin(), adj.end(), v), adj.end());
        if (cands.size() + 1 >= k) total += extend_cliques(g, cands, k - 1);
    }
    return {k, total};
}

double generating_function(const DegreeStats& stats, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("generating_function: x must be in [0,1]");
    double h = 0.0;
    double base = 1.0 - x;
    // sum over occupied degrees only
    for (std::size_t k = 0; k < stats.histogram.size(); ++k) {
        if (stats.histogram[k] == 0) continue;
        h += std::pow(base, static_cast<double>(k)) * static_cast<double>(stats.histogram[k]);
    }
    return h / static_cast<double>(stats.n_vertices);
}

std::vector<std::uint64_t> initial_degrees(const Graph& g, std::size_t n0) {
    if (n0 > g.vertex_count())
        throw std::invalid_argument("initial_degrees: n0 exceeds vertex count");
    std::vector<std::uint64_t> d(n0);
    for (std::size_t i = 0; i < n0; ++i) d[i] = g.degree(static_cast<VertexId>(i + 1));
    return d;
}

}  // namespace pdgraph
