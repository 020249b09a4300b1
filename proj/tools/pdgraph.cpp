#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdgraph/dual.hpp"
#include "pdgraph/io.hpp"
#include "pdgraph/observables.hpp"
#include "pdgraph/pd_sim.hpp"
#include "pdgraph/theory.hpp"
#include "pdgraph/verify.hpp"

namespace {

using nlohmann::json;
using namespace pdgraph;

// Output directory can be overridden by PDGRAPH_OUTDIR (relative paths only).
std::string resolve_out_path(const std::string& path) {
    const char* dir = std::getenv("PDGRAPH_OUTDIR");
    if (dir == nullptr || path.empty() || path.front() == '/') return path;
    return std::string(dir) + "/" + path;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    const std::string resolved = resolve_out_path(path);
    file.open(resolved);
    if (!file) throw std::runtime_error("cannot open output file: " + resolved);
    return file;
}

std::vector<double> parse_time_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

json regime_report_json(const theory::RegimeReport& r) {
    json j;
    j["p"] = r.p;
    j["delta"] = r.delta;
    j["regime"] = theory::to_string(r.regime);
    j["thresholds"] = {{"fast_isolation", r.threshold_fast},
                       {"supercritical", r.threshold_super}};
    j["p_star"] = theory::p_star();
    if (r.gamma) j["gamma"] = *r.gamma;
    if (r.xi) j["xi"] = *r.xi;
    if (r.fplus_exponent) j["fplus_exponent"] = *r.fplus_exponent;
    return j;
}

int cmd_simulate(double p, double delta, const std::string& g0_name, double horizon,
                 const std::string& checkpoints_csv, std::size_t n, std::uint64_t seed,
                 const std::string& out_path, const std::string& format,
                 const std::string& cliques_csv, std::size_t max_vertices, unsigned threads) {
    SimParams params;
    params.p = p;
    params.delta = delta;
    params.seed = seed;
    params.horizon = horizon;
    params.checkpoints = checkpoints_csv.empty() ? std::vector<double>{horizon}
                                                 : parse_time_list(checkpoints_csv);
    params.max_vertices = max_vertices;
    for (double k : parse_time_list(cliques_csv))
        params.clique_ks.push_back(static_cast<unsigned>(k));
    params.validate();

    const Graph g0 = io::load_graph(g0_name);
    if (g0.edge_count() == 0)
        std::cerr << "note: initial graph has no edges; the process stays edgeless\n";

    const auto trajectories = run_replicas(params, g0, n, threads);

    std::ostringstream config;
    config << "simulate p=" << p << " delta=" << delta << " g0=" << g0_name
           << " horizon=" << horizon << " checkpoints=" << checkpoints_csv << " n=" << n
           << " max_vertices=" << max_vertices;

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv")
        io::write_trajectories_csv(out, trajectories, config.str(), seed);
    else
        io::write_trajectories_json(out, trajectories, config.str(), seed);
    return 0;
}

int cmd_dual_z(double b, double d, double p, std::uint64_t z0, const std::string& times_csv,
               std::size_t n, std::uint64_t seed, const std::string& out_path,
               const std::string& format, unsigned threads) {
    DisasterBdParams params{b, d, p};
    const auto times = parse_time_list(times_csv);
    const auto pmfs = z_run(params, z0, times, n, seed, threads);

    std::ostringstream config;
    config << "dual z b=" << b << " d=" << d << " p=" << p << " z0=" << z0 << " n=" << n;

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "csv") {
        out << io::csv_header(config.str(), seed);
        out << "t,k,probability,stderr\n";
        for (const auto& pmf : pmfs)
            for (std::size_t k = 0; k < pmf.counts.size(); ++k) {
                if (pmf.counts[k] == 0) continue;
                out << io::format_double(pmf.t) << "," << k << ","
                    << io::format_double(pmf.pmf(k)) << "," << io::format_double(pmf.se(k))
                    << "\n";
            }
    } else {
        json doc;
        doc["version"] = io::kVersion;
        doc["config"] = config.str();
        doc["seed"] = seed;
        json arr = json::array();
        for (const auto& pmf : pmfs)
            arr.push_back({{"t", pmf.t},
                           {"survival_frequency", pmf.survival_frequency()},
                           {"survival_se", pmf.survival_se()}});
        doc["survival"] = arr;
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int cmd_dual_pdmp(double p, double delta, double x0, const std::string& times_csv, unsigned kmax,
                  std::size_t n, std::uint64_t seed, const std::string& out_path,
                  unsigned threads) {
    const auto times = parse_time_list(times_csv);
    const auto moments = x_moments(p, delta, x0, kmax, times, n, seed, threads);
    std::ostringstream config;
    config << "dual pdmp p=" << p << " delta=" << delta << " x0=" << x0 << " kmax=" << kmax
           << " n=" << n;
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    io::write_moments_csv(out, moments, config.str(), seed);
    return 0;
}

int cmd_dual_c(double p, double delta, double T, std::size_t n, std::uint64_t seed,
               const std::string& out_path, unsigned threads) {
    const CEstimate est = estimate_c(p, delta, T, n, seed, 0.1, threads);
    json doc;
    doc["version"] = io::kVersion;
    doc["config"] = "dual c p=" + std::to_string(p) + " delta=" + std::to_string(delta);
    doc["seed"] = seed;
    doc["c"] = est.c;
    doc["se"] = est.se;
    doc["integral"] = est.integral;
    doc["tail_contribution"] = est.tail_contribution;
    doc["truncation_time"] = est.truncation_time;
    doc["n"] = est.n;
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << doc.dump(2) << "\n";
    return 0;
}

int cmd_theory(double p, double delta, const std::string& out_path) {
    const auto report = theory::classify_regime(p, delta);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << regime_report_json(report).dump(2) << "\n";
    return 0;
}

int cmd_sweep(double p_min, double p_max, unsigned p_steps, double d_min, double d_max,
              unsigned d_steps, unsigned kmax, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "# pdgraph " << io::kVersion << "\n";
    out << "p,delta,regime,fplus_exponent";
    for (unsigned k = 1; k <= kmax; ++k) out << ",beta_" << k;
    for (unsigned k = 2; k <= kmax; ++k) out << ",clique_rate_" << k;
    out << "\n";
    for (unsigned pi = 0; pi < p_steps; ++pi) {
        const double p = p_min + (p_max - p_min) * (p_steps == 1 ? 0.0 : pi / double(p_steps - 1));
        for (unsigned di = 0; di < d_steps; ++di) {
            const double d =
                d_min + (d_max - d_min) * (d_steps == 1 ? 0.0 : di / double(d_steps - 1));
            const auto rep = theory::classify_regime(p, d);
            out << io::format_double(p) << "," << io::format_double(d) << ","
                << theory::to_string(rep.regime) << ","
                << (rep.fplus_exponent ? io::format_double(*rep.fplus_exponent) : "");
            for (unsigned k = 1; k <= kmax; ++k)
                out << "," << io::format_double(theory::beta_k(p, d, k));
            for (unsigned k = 2; k <= kmax; ++k)
                out << "," << io::format_double(theory::clique_rate(p, d, k));
            out << "\n";
        }
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& scale,
               const std::string& out_path, unsigned threads) {
    verify::VerifyConfig cfg;
    cfg.seed = seed;
    cfg.threads = threads;
    if (scale == "smoke")
        cfg.scale = 0.1;
    else if (scale == "default")
        cfg.scale = 1.0;
    else if (scale == "deep")
        cfg.scale = 10.0;
    else
        throw std::runtime_error("unknown scale: " + scale);

    const auto results = verify::run_suite(suite, cfg);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    io::write_check_results_jsonl(out, results);

    int hard_failures = 0;
    for (const auto& r : results) {
        std::cerr << (r.pass ? "PASS" : (r.hard ? "FAIL" : "fail(soft)")) << "  " << r.name
                  << "\n";
        if (r.hard && !r.pass) ++hard_failures;
    }
    std::cerr << (hard_failures == 0 ? "all hard checks passed\n"
                                     : std::to_string(hard_failures) + " hard check(s) failed\n");
    return hard_failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and verification harness for the partial duplication "
                 "random graph with edge deletion"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run PD(p,delta) replicas and emit trajectories");
    double p = 0.5, delta = 0.0;
    std::string g0_name = "edge";
    double horizon = 1.0;
    std::string checkpoints, cliques, out_path, format = "csv";
    std::size_t n = 1000, max_vertices = 2'000'000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    sim->add_option("--p", p, "edge-retaining probability")->required();
    sim->add_option("--delta", delta, "edge deletion rate")->required();
    sim->add_option("--g0", g0_name, "builtin graph or edge-list path");
    sim->add_option("--t", horizon, "time horizon")->required();
    sim->add_option("--checkpoints", checkpoints, "comma-separated snapshot times");
    sim->add_option("--n", n, "number of replicas");
    sim->add_option("--seed", seed, "rng seed");
    sim->add_option("--out", out_path, "output path (default stdout)");
    sim->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--cliques", cliques, "comma-separated clique sizes to record");
    sim->add_option("--max-vertices", max_vertices, "vertex cap per replica");
    sim->add_option("--threads", threads, "worker threads (0 = all cores)");

    // dual
    auto* dual = app.add_subcommand("dual", "Simulate the dual processes Z and X");
    std::string process = "z";
    double b = 0.5, d = 0.0, zp = 0.5, x0 = 1.0, T = 30.0;
    std::uint64_t z0 = 1;
    std::string times = "1";
    unsigned kmax = 1;
    bool do_estimate_c = false;
    dual->add_option("--process", process, "z or pdmp")->check(CLI::IsMember({"z", "pdmp"}));
    dual->add_option("--b", b, "Z birth rate");
    dual->add_option("--d", d, "Z death rate");
    dual->add_option("--p", zp, "disaster survival probability / PDMP p");
    dual->add_option("--delta", delta, "PDMP delta");
    dual->add_option("--z0", z0, "initial population");
    dual->add_option("--x0", x0, "initial PDMP state");
    dual->add_option("--times", times, "comma-separated evaluation times");
    dual->add_option("--k", kmax, "highest moment order");
    dual->add_flag("--estimate-c", do_estimate_c, "estimate the regime-1 constant c");
    dual->add_option("--T", T, "truncation time for --estimate-c");
    dual->add_option("--n", n, "number of replicas");
    dual->add_option("--seed", seed, "rng seed");
    dual->add_option("--out", out_path, "output path (default stdout)");
    dual->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    dual->add_option("--threads", threads, "worker threads (0 = all cores)");

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "Print the regime report as JSON");
    theory_cmd->add_option("--p", p, "edge-retaining probability")->required();
    theory_cmd->add_option("--delta", delta, "edge deletion rate")->required();
    theory_cmd->add_option("--out", out_path, "output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Emit a (p, delta) grid of exponents as CSV");
    double p_min = 0.05, p_max = 0.95, d_min = 0.0, d_max = 1.0;
    unsigned p_steps = 19, d_steps = 11;
    sweep->add_option("--p-min", p_min);
    sweep->add_option("--p-max", p_max);
    sweep->add_option("--p-steps", p_steps);
    sweep->add_option("--delta-min", d_min);
    sweep->add_option("--delta-max", d_max);
    sweep->add_option("--delta-steps", d_steps);
    sweep->add_option("--kmax", kmax, "highest k for beta_k / clique rates");
    sweep->add_option("--out", out_path, "output path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "Run the Monte Carlo verification suites");
    std::string suite = "all", scale = "default";
    std::uint64_t vseed = 20240314;
    ver->add_option("--suite", suite, "duality|martingales|rates|laws|extinction|all")
        ->check(CLI::IsMember({"duality", "martingales", "rates", "laws", "extinction", "all"}));
    ver->add_option("--seed", vseed, "rng seed");
    ver->add_option("--scale", scale, "smoke|default|deep")
        ->check(CLI::IsMember({"smoke", "default", "deep"}));
    ver->add_option("--out", out_path, "JSONL output path (default stdout)");
    ver->add_option("--threads", threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // configuration error
    }

    try {
        if (sim->parsed())
            return cmd_simulate(p, delta, g0_name, horizon, checkpoints, n, seed, out_path,
                                format, cliques, max_vertices, threads);
        if (dual->parsed()) {
            if (do_estimate_c) return cmd_dual_c(zp, delta, T, n, seed, out_path, threads);
            if (process == "z")
                return cmd_dual_z(b, d, zp, z0, times, n, seed, out_path, format, threads);
            return cmd_dual_pdmp(zp, delta, x0, times, kmax, n, seed, out_path, threads);
        }
        if (theory_cmd->parsed()) return cmd_theory(p, delta, out_path);
        if (sweep->parsed())
            return cmd_sweep(p_min, p_max, p_steps, d_min, d_max, d_steps, kmax, out_path);
        if (ver->parsed()) return cmd_verify(suite, vseed, scale, out_path, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
