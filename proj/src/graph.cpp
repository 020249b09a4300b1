#include "pdgraph/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pdgraph {

void Graph::check_vertex(VertexId v) const {
    if (v == 0 || v >= adjacency_.size())
        throw std::invalid_argument("invalid vertex id " + std::to_string(v));
}

Graph Graph::from_edges(std::size_t n_vertices,
                        const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Graph g(n_vertices);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

VertexId Graph::add_vertex() {
    adjacency_.emplace_back();
    return static_cast<VertexId>(adjacency_.size() - 1);
}

void Graph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    const EdgeRef e(u, v);
    if (edge_index_.count(edge_key(e)))
        throw std::invalid_argument("edge already present");
    auto& au = adjacency_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adjacency_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    edge_index_.emplace(edge_key(e), edges_.size());
    edges_.push_back(e);
}

VertexId Graph::add_duplicate(VertexId parent, double p, Rng& rng) {
    check_vertex(parent);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    const VertexId copy = add_vertex();
    auto& copy_adj = adjacency_[copy];
    // Parent's adjacency is sorted and copy is the largest id, so both the
    // retained-subset list and each neighbor list stay sorted via push_back.
    for (const VertexId w : adjacency_[parent]) {
        if (!rng.bernoulli(p)) continue;
        copy_adj.push_back(w);
        adjacency_[w].push_back(copy);
        const EdgeRef e(copy, w);
        edge_index_.emplace(edge_key(e), edges_.size());
        edges_.push_back(e);
    }
    return copy;
}

void Graph::delete_edge(EdgeRef e) {
    check_vertex(e.u);
    check_vertex(e.v);
    const auto it = edge_index_.find(edge_key(e));
    if (it == edge_index_.end()) throw std::invalid_argument("edge does not exist");
    const std::size_t pos = it->second;
    edge_index_.erase(it);

    auto& au = adjacency_[e.u];
    au.erase(std::lower_bound(au.begin(), au.end(), e.v));
    auto& av = adjacency_[e.v];
    av.erase(std::lower_bound(av.begin(), av.end(), e.u));

    const std::size_t last = edges_.size() - 1;
    if (pos != last) {
        edges_[pos] = edges_[last];
        edge_index_[edge_key(edges_[pos])] = pos;
    }
    edges_.pop_back();
}

EdgeRef Graph::sample_uniform_edge(Rng& rng) const {
    if (edges_.empty()) throw std::invalid_argument("graph has no edges to sample");
    return edges_[rng.uniform_below(edges_.size())];
}

}  // namespace pdgraph
