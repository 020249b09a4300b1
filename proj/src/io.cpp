#include "pdgraph/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pdgraph/observables.hpp"

namespace pdgraph::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::size_t declared_vertices = 0;
    std::size_t max_id = 0;
    std::string line;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& what) {
        throw std::runtime_error("edge list parse error at line " + std::to_string(line_no) +
                                 ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank or comment-only

        if (first == "vertices") {
            long long n = -1;
            if (!(ls >> n) || n < 0) fail("expected 'vertices N' with N >= 0");
            declared_vertices = static_cast<std::size_t>(n);
            std::string extra;
            if (ls >> extra) fail("trailing tokens after vertex count");
            continue;
        }

        long long u = 0, v = 0;
        try {
            u = std::stoll(first);
        } catch (const std::exception&) {
            fail("expected a vertex id, got '" + first + "'");
        }
        if (!(ls >> v)) fail("expected two vertex ids");
        std::string extra;
        if (ls >> extra) fail("trailing tokens after edge");
        if (u < 1 || v < 1) fail("vertex ids are 1-based");
        if (u == v) fail("self-loop " + std::to_string(u) + " " + std::to_string(v));
        for (const auto& e : edges) {
            if ((e.first == static_cast<VertexId>(u) && e.second == static_cast<VertexId>(v)) ||
                (e.first == static_cast<VertexId>(v) && e.second == static_cast<VertexId>(u)))
                fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        }
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        max_id = std::max(max_id, static_cast<std::size_t>(std::max(u, v)));
    }

    const std::size_t n_vertices = std::max(declared_vertices, max_id);
    if (n_vertices == 0) throw std::runtime_error("edge list declares no vertices");
    return Graph::from_edges(n_vertices, edges);
}

Graph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list file: " + path);
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "vertices " << g.vertex_count() << "\n";
    for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
}

Graph builtin_graph(const std::string& name) {
    if (name == "edge") return Graph::from_edges(2, {{1, 2}});
    if (name == "path3") return Graph::from_edges(3, {{1, 2}, {2, 3}});
    if (name == "triangle") return Graph::from_edges(3, {{1, 2}, {2, 3}, {1, 3}});
    if (name.rfind("star-", 0) == 0) {
        const int leaves = std::stoi(name.substr(5));
        if (leaves < 1) throw std::runtime_error("star-K needs K >= 1");
        Graph g(static_cast<std::size_t>(leaves) + 1);  // center is vertex 1
        for (int i = 0; i < leaves; ++i) g.add_edge(1, static_cast<VertexId>(i + 2));
        return g;
    }
    if (name.rfind("complete-", 0) == 0) {
        const int k = std::stoi(name.substr(9));
        if (k < 2) throw std::runtime_error("complete-K needs K >= 2");
        Graph g(static_cast<std::size_t>(k));
        for (VertexId u = 1; u <= static_cast<VertexId>(k); ++u)
            for (VertexId v = u + 1; v <= static_cast<VertexId>(k); ++v) g.add_edge(u, v);
        return g;
    }
    throw std::runtime_error("unknown builtin graph: " + name);
}

Graph load_graph(const std::string& name_or_path) {
    try {
        return builtin_graph(name_or_path);
    } catch (const std::runtime_error&) {
        std::ifstream probe(name_or_path);
        if (!probe)
            throw std::runtime_error("'" + name_or_path +
                                     "' is neither a builtin graph nor a readable file");
        return parse_edge_list(probe);
    }
}

std::string csv_header(const std::string& config_line, std::uint64_t seed) {
    std::ostringstream out;
    out << "# pdgraph " << kVersion << "\n";
    out << "# config: " << config_line << "\n";
    out << "# seed: " << seed << "\n";
    return out.str();
}

void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& trajectories,
                            const std::string& config_line, std::uint64_t seed) {
    out << csv_header(config_line, seed);
    out << "replicate,t,n_vertices,n_edges,k,F_k\n";
    for (std::size_t r = 0; r < trajectories.size(); ++r) {
        for (const auto& snap : trajectories[r].snapshots) {
            const double n = static_cast<double>(snap.n_vertices);
            for (std::size_t k = 0; k < snap.degree_histogram.size(); ++k) {
                if (snap.degree_histogram[k] == 0) continue;
                out << r << "," << format_double(snap.t) << "," << snap.n_vertices << ","
                    << snap.n_edges << "," << k << ","
                    << format_double(static_cast<double>(snap.degree_histogram[k]) / n) << "\n";
            }
        }
    }
}

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe summarize(const std::vector<double>& values) {
    MeanSe out;
    const double n = static_cast<double>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - out.mean) * (v - out.mean);
    if (values.size() > 1) out.se = std::sqrt(var / (n - 1.0) / n);
    return out;
}

}  // namespace

void write_trajectories_json(std::ostream& out, const std::vector<Trajectory>& trajectories,
                             const std::string& config_line, std::uint64_t seed) {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_line;
    doc["seed"] = seed;
    doc["n_replicas"] = trajectories.size();
    doc["truncated_replicas"] = 0;
    int truncated = 0;
    for (const auto& t : trajectories) truncated += t.truncated ? 1 : 0;
    doc["truncated_replicas"] = truncated;
    if (!trajectories.empty() && trajectories.front().empty_initial_edges)
        doc["note"] = "initial graph has no edges; outside the model's stated assumptions";

    const std::size_t n_checkpoints =
        trajectories.empty() ? 0 : trajectories.front().snapshots.size();
    json checkpoints = json::array();
    for (std::size_t ci = 0; ci < n_checkpoints; ++ci) {
        json cp;
        cp["t"] = trajectories.front().snapshots[ci].t;

        std::vector<double> vertices, edges;
        std::size_t max_deg = 0;
        for (const auto& traj : trajectories) {
            if (ci >= traj.snapshots.size()) continue;
            const auto& s = traj.snapshots[ci];
            vertices.push_back(static_cast<double>(s.n_vertices));
            edges.push_back(static_cast<double>(s.n_edges));
            max_deg = std::max(max_deg, s.degree_histogram.size());
        }
        const MeanSe mv = summarize(vertices);
        const MeanSe me = summarize(edges);
        cp["n_vertices"] = {{"mean", mv.mean}, {"se", mv.se}};
        cp["n_edges"] = {{"mean", me.mean}, {"se", me.se}};

        json fk = json::array();
        for (std::size_t k = 0; k < max_deg; ++k) {
            std::vector<double> vals;
            for (const auto& traj : trajectories) {
                if (ci >= traj.snapshots.size()) continue;
                const auto& s = traj.snapshots[ci];
                const double count =
                    k < s.degree_histogram.size() ? static_cast<double>(s.degree_histogram[k]) : 0.0;
                vals.push_back(count / static_cast<double>(s.n_vertices));
            }
            const MeanSe m = summarize(vals);
            fk.push_back({{"k", k}, {"mean", m.mean}, {"se", m.se}});
        }
        cp["F"] = fk;

        if (!trajectories.front().snapshots[ci].cliques.empty()) {
            json cliques = json::array();
            for (std::size_t qi = 0; qi < trajectories.front().snapshots[ci].cliques.size(); ++qi) {
                std::vector<double> vals;
                for (const auto& traj : trajectories) {
                    if (ci >= traj.snapshots.size()) continue;
                    vals.push_back(static_cast<double>(traj.snapshots[ci].cliques[qi].count));
                }
                const MeanSe m = summarize(vals);
                cliques.push_back({{"k", trajectories.front().snapshots[ci].cliques[qi].k},
                                   {"mean", m.mean},
                                   {"se", m.se}});
            }
            cp["cliques"] = cliques;
        }

        json degrees = json::array();
        const std::size_t n0 = trajectories.front().snapshots[ci].initial_degrees.size();
        for (std::size_t i = 0; i < n0; ++i) {
            std::vector<double> vals;
            for (const auto& traj : trajectories) {
                if (ci >= traj.snapshots.size()) continue;
                vals.push_back(static_cast<double>(traj.snapshots[ci].initial_degrees[i]));
            }
            const MeanSe m = summarize(vals);
            degrees.push_back({{"i", i + 1}, {"mean", m.mean}, {"se", m.se}});
        }
        cp["initial_degrees"] = degrees;

        checkpoints.push_back(std::move(cp));
    }
    doc["checkpoints"] = std::move(checkpoints);
    out << doc.dump(2) << "\n";
}

void write_moments_csv(std::ostream& out, const std::vector<MomentEstimate>& moments,
                       const std::string& config_line, std::uint64_t seed) {
    out << csv_header(config_line, seed);
    out << "t,k,moment_estimate,stderr\n";
    for (const auto& m : moments)
        out << format_double(m.t) << "," << m.k << "," << format_double(m.mean) << ","
            << format_double(m.se) << "\n";
}

void write_check_results_jsonl(std::ostream& out,
                               const std::vector<verify::CheckResult>& results) {
    for (const auto& r : results) {
        json j;
        j["name"] = r.name;
        j["statistic"] = r.statistic;
        j["expected"] = r.expected;
        j["stderr"] = r.stderr_combined;
        j["z_score"] = std::isfinite(r.z_score) ? json(r.z_score) : json("inf");
        j["pass"] = r.pass;
        j["hard"] = r.hard;
        j["n_replicas"] = r.n_replicas;
        j["runtime_seconds"] = r.runtime_seconds;
        j["budget_seconds"] = r.budget_seconds;
        if (!r.note.empty()) j["note"] = r.note;
        out << j.dump() << "\n";
    }
}

}  // namespace pdgraph::io
