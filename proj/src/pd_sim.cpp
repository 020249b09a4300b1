#include "pdgraph/pd_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdgraph/parallel.hpp"

namespace pdgraph {

void SimParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
        std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end())
        throw std::invalid_argument("checkpoints must be strictly increasing");
    for (double c : checkpoints)
        if (!(c >= 0.0 && c <= horizon))
            throw std::invalid_argument("checkpoints must lie in [0, horizon]");
    if (max_vertices < 1) throw std::invalid_argument("max_vertices must be >= 1");
    for (unsigned k : clique_ks)
        if (k < 2 || k > 12) throw std::invalid_argument("clique sizes must be in [2,12]");
}

std::pair<double, double> total_rates(const Graph& g, const SimParams& params) {
    if (g.vertex_count() == 0) throw std::invalid_argument("total_rates: empty graph");
    return {static_cast<double>(g.vertex_count()) + 1.0,
            params.delta * static_cast<double>(g.edge_count())};
}

Simulation::Simulation(Graph g0, const SimParams& params, Rng rng)
    : g_(std::move(g0)), p_(params.p), delta_(params.delta), rng_(rng) {
    if (g_.vertex_count() == 0) throw std::invalid_argument("initial graph has no vertices");
}

double Simulation::peek_next_time() {
    if (!has_pending_) {
        const double dup_rate = static_cast<double>(g_.vertex_count()) + 1.0;
        const double del_rate = delta_ * static_cast<double>(g_.edge_count());
        pending_time_ = clock_ + rng_.exponential(dup_rate + del_rate);
        if (!std::isfinite(pending_time_)) throw std::runtime_error("simulation clock overflow");
        has_pending_ = true;
    }
    return pending_time_;
}

EventKind Simulation::apply_pending() {
    peek_next_time();
    clock_ = pending_time_;
    has_pending_ = false;
    ++events_;

    const double dup_rate = static_cast<double>(g_.vertex_count()) + 1.0;
    const double del_rate = delta_ * static_cast<double>(g_.edge_count());
    const double u = rng_.uniform01() * (dup_rate + del_rate);
    if (u < dup_rate) {
        const auto parent = static_cast<VertexId>(1 + rng_.uniform_below(g_.vertex_count()));
        g_.add_duplicate(parent, p_, rng_);
        return EventKind::Duplication;
    }
    g_.delete_edge(g_.sample_uniform_edge(rng_));
    return EventKind::Deletion;
}

std::pair<double, EventKind> Simulation::step() {
    peek_next_time();
    const EventKind kind = apply_pending();
    return {clock_, kind};
}

namespace {

Snapshot take_snapshot(const Graph& g, double t, const SimParams& params, std::size_t n0) {
    Snapshot s;
    s.t = t;
    s.n_vertices = g.vertex_count();
    s.n_edges = g.edge_count();
    s.degree_histogram = degree_stats(g).histogram;
    for (unsigned k : params.clique_ks) s.cliques.push_back(count_cliques(g, k));
    s.initial_degrees = initial_degrees(g, n0);
    return s;
}

}  // namespace

Trajectory run(const SimParams& params, const Graph& g0, std::uint64_t replicate) {
    params.validate();
    Trajectory out;
    out.empty_initial_edges = g0.edge_count() == 0;
    const std::size_t n0 = g0.vertex_count();

    Simulation sim(g0, params, Rng(params.seed, replicate));
    std::size_t ci = 0;
    while (true) {
        const double t_next = sim.peek_next_time();
        while (ci < params.checkpoints.size() && params.checkpoints[ci] < t_next) {
            out.snapshots.push_back(take_snapshot(sim.graph(), params.checkpoints[ci], params, n0));
            ++ci;
        }
        if (t_next > params.horizon) break;
        sim.apply_pending();
        if (sim.graph().vertex_count() >= params.max_vertices) {
            out.truncated = true;
            break;
        }
    }
    out.event_count = sim.event_count();
    return out;
}

std::vector<Trajectory> run_replicas(const SimParams& params, const Graph& g0, std::size_t n,
                                     unsigned threads) {
    if (n < 1) throw std::invalid_argument("run_replicas: n must be >= 1");
    params.validate();
    std::vector<Trajectory> out(n);
    parallel_accumulate<int>(
        n, 0, [&](std::uint64_t r, int&) { out[r] = run(params, g0, r); },
        [](int&, const int&) {}, threads);
    return out;
}

}  // namespace pdgraph
