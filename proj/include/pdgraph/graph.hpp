#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdgraph/rng.hpp"

namespace pdgraph {

using VertexId = std::uint32_t;

// Unordered vertex pair, stored with u < v.
struct EdgeRef {
    VertexId u = 0;
    VertexId v = 0;

    EdgeRef() = default;
    EdgeRef(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const EdgeRef&) const = default;
};

// Dynamic simple undirected graph with stable 1-based vertex ids. Vertices
// are append-only; isolated vertices persist. Per-vertex adjacency is kept as
// a sorted vector, and a flat edge array with a position index provides O(1)
// uniform edge sampling and O(1) edge removal (swap-remove).
class Graph {
public:
    Graph() : adjacency_(1) {}

    // n isolated vertices, ids 1..n.
    explicit Graph(std::size_t n_vertices) : adjacency_(n_vertices + 1) {}

    static Graph from_edges(std::size_t n_vertices,
                            const std::vector<std::pair<VertexId, VertexId>>& edges);

    std::size_t vertex_count() const { return adjacency_.size() - 1; }
    std::size_t edge_count() const { return edges_.size(); }

    std::size_t degree(VertexId v) const {
        check_vertex(v);
        return adjacency_[v].size();
    }

    const std::vector<VertexId>& neighbors(VertexId v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    bool has_edge(VertexId u, VertexId v) const;

    const std::vector<EdgeRef>& edges() const { return edges_; }

    // Appends an isolated vertex and returns its id (= new vertex_count).
    VertexId add_vertex();

    void add_edge(VertexId u, VertexId v);

    // p-copy of `parent`: appends a vertex that connects to each neighbor of
    // parent independently with probability p, never to parent itself.
    VertexId add_duplicate(VertexId parent, double p, Rng& rng);

    void delete_edge(EdgeRef e);

    EdgeRef sample_uniform_edge(Rng& rng) const;

private:
    void check_vertex(VertexId v) const;

    static std::uint64_t edge_key(EdgeRef e) {
        return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    }

    std::vector<std::vector<VertexId>> adjacency_;  // slot 0 unused
    std::vector<EdgeRef> edges_;
    std::unordered_map<std::uint64_t, std::size_t> edge_index_;
};

}  // namespace pdgraph
