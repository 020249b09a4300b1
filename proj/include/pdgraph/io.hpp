#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdgraph/dual.hpp"
#include "pdgraph/graph.hpp"
#include "pdgraph/pd_sim.hpp"
#include "pdgraph/verify.hpp"

namespace pdgraph::io {

inline constexpr const char* kVersion = "0.1.0";

// Plain-text edge list: one "u v" pair per line, 1-based ids; blank lines and
// '#' comments ignored; an optional "vertices N" header declares isolated
// vertices. Parse errors carry the offending line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);

// Builtin initial graphs: edge, path3, triangle, star-K, complete-K.
Graph builtin_graph(const std::string& name);

// Builtin name or a path to an edge-list file.
Graph load_graph(const std::string& name_or_path);

// Header comment block (version, configuration, seed) prepended to CSV output.
std::string csv_header(const std::string& config_line, std::uint64_t seed);

// Long-form trajectory CSV: replicate,t,n_vertices,n_edges,k,F_k. One row per
// occupied degree. Floating point at 17 significant digits.
void write_trajectories_csv(std::ostream& out, const std::vector<Trajectory>& trajectories,
                            const std::string& config_line, std::uint64_t seed);

// JSON summary with per-checkpoint means and standard errors across replicas.
void write_trajectories_json(std::ostream& out, const std::vector<Trajectory>& trajectories,
                             const std::string& config_line, std::uint64_t seed);

// Moment grid CSV: t,k,moment_estimate,stderr.
void write_moments_csv(std::ostream& out, const std::vector<MomentEstimate>& moments,
                       const std::string& config_line, std::uint64_t seed);

// One CheckResult JSON object per line.
void write_check_results_jsonl(std::ostream& out, const std::vector<verify::CheckResult>& results);

std::string format_double(double v);  // %.17g

}  // namespace pdgraph::io
