#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pdgraph/graph.hpp"
#include "pdgraph/observables.hpp"
#include "pdgraph/rng.hpp"

namespace pdgraph {

struct SimParams {
    double p = 0.5;
    double delta = 0.0;
    std::uint64_t seed = 1;
    double horizon = 0.0;
    std::vector<double> checkpoints;       // sorted, nonnegative, <= horizon
    std::size_t max_vertices = 2'000'000;  // guards runaway configs
    std::vector<unsigned> clique_ks;       // clique sizes recorded per snapshot

    void validate() const;
};

struct Snapshot {
    double t = 0;
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    std::vector<std::uint64_t> degree_histogram;
    std::vector<CliqueCount> cliques;
    std::vector<std::uint64_t> initial_degrees;  // D_i for i = 1..|V_0|
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::uint64_t event_count = 0;
    bool truncated = false;            // max_vertices reached before horizon
    bool empty_initial_edges = false;  // run started without edges (see run())
};

enum class EventKind { Duplication, Deletion };

// (|V|+1, delta * |E|): total duplication and deletion rates.
std::pair<double, double> total_rates(const Graph& g, const SimParams& params);

// Exact event-driven simulation of PD(p, delta): competing exponential
// clocks, duplication of a uniform vertex at total rate |V|+1, deletion of a
// uniform edge at total rate delta |E|.
class Simulation {
public:
    Simulation(Graph g0, const SimParams& params, Rng rng);

    const Graph& graph() const { return g_; }
    Graph& graph() { return g_; }
    double clock() const { return clock_; }
    std::uint64_t event_count() const { return events_; }

    // Time of the next event. Consumes randomness; the event itself is not
    // applied until apply_pending(). Clock overflow raises std::runtime_error.
    double peek_next_time();

    // Applies the pending event (drawing one if none is pending) and returns
    // its kind. Advances the clock.
    EventKind apply_pending();

    // One full event: waiting time + event selection + mutation.
    std::pair<double, EventKind> step();

private:
    Graph g_;
    double p_;
    double delta_;
    double clock_ = 0.0;
    std::uint64_t events_ = 0;
    Rng rng_;
    double pending_time_ = -1.0;
    bool has_pending_ = false;
};

// Runs one trajectory with the rng stream (params.seed, replicate) and
// snapshots at params.checkpoints: each snapshot is the state immediately
// before the first event after the checkpoint time. An empty initial edge
// set is accepted (the graph simply never gains edges) and flagged.
Trajectory run(const SimParams& params, const Graph& g0, std::uint64_t replicate = 0);

// n independent trajectories; replicate r uses the stream (seed, r), so the
// result is independent of thread count and execution order.
std::vector<Trajectory> run_replicas(const SimParams& params, const Graph& g0, std::size_t n,
                                     unsigned threads = 0);

}  // namespace pdgraph
