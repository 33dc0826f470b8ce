// locmin: separator-based local search on graphs, with query accounting.
//
// Subcommands: generate | separate | run | experiment | verify | compare.
// Exit codes: 0 success, 1 unverified result, 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "locmin/bench.hpp"
#include "locmin/generators.hpp"
#include "locmin/graph_io.hpp"
#include "locmin/oracle.hpp"
#include "locmin/provider.hpp"
#include "locmin/search.hpp"

using json = nlohmann::json;
using namespace locmin;

namespace {

json iteration_json(const IterationRecord& rec) {
    return json{{"i", rec.index},
                {"strategy", rec.strategy},
                {"separator_size", rec.separator_size},
                {"m", rec.m == kNoVertex ? json(nullptr) : json(rec.m)},
                {"z", rec.z == kNoVertex ? json(nullptr) : json(rec.z)},
                {"v", rec.v == kNoVertex ? json(nullptr) : json(rec.v)},
                {"parent_size", rec.parent_size},
                {"parent_max_degree", rec.parent_max_degree},
                {"subproblem_size", rec.subproblem_size},
                {"residual_max_degree", rec.residual_max_degree},
                {"cost_raw", rec.cost_raw},
                {"cost_modeled", rec.cost_modeled},
                {"emitted", rec.emitted},
                {"escaped_into_separator", rec.escaped_into_separator}};
}

void dump_trace(std::ostream& os, const SearchResult& res) {
    for (const auto& rec : res.trace.iterations) os << iteration_json(rec).dump() << '\n';
    json totals{{"totals",
                 {{"raw_queries", res.trace.total_raw},
                  {"modeled_cost", res.trace.total_modeled},
                  {"depth", res.trace.depth},
                  {"vertex", res.vertex},
                  {"verified", res.verified}}}};
    os << totals.dump() << '\n';
}

json separator_json(const SeparatorReport& rep) {
    return json{{"strategy", rep.strategy},
                {"vertices", rep.separator.vertices},
                {"component_sizes", rep.separator.component_sizes},
                {"size_bound", rep.size_bound},
                {"met_bound", rep.met_bound},
                {"guaranteed", rep.guaranteed}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"separator-based local search benchmark"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string format = "json";
    app.add_option("--seed", seed, "base seed for all randomness");
    app.add_option("--jobs", jobs, "worker threads for experiments");
    app.add_option("--format", format, "summary format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // generate
    auto* gen = app.add_subcommand("generate", "write a graph and value-function file");
    std::string gen_family, gen_values = "random", gen_out;
    std::size_t gen_size = 0, gen_rows = 0, gen_cols = 0, gen_n = 0;
    gen->add_option("--family", gen_family, "grid|tgrid|tree|path|star|complete")->required();
    gen->add_option("--size", gen_size, "grid side length");
    gen->add_option("--rows", gen_rows, "grid rows");
    gen->add_option("--cols", gen_cols, "grid cols");
    gen->add_option("--n", gen_n, "vertex count (non-grid families)");
    gen->add_option("--values", gen_values, "random|row-major|valley|staircase");
    gen->add_option("--out", gen_out, "output path prefix");

    // separate
    auto* sep = app.add_subcommand("separate", "build and dump a separator");
    std::string sep_graph, sep_strategy = "auto", sep_out;
    sep->add_option("--graph", sep_graph, "graph file")->required();
    sep->add_option("--strategy", sep_strategy, "auto|trivial|grid|centroid|planar|bfs-fallback");
    sep->add_option("--out", sep_out, "write JSON here instead of stdout");

    // run
    auto* run = app.add_subcommand("run", "run one algorithm on one instance");
    std::string run_graph, run_values, run_algo, run_trace, run_strategy = "auto";
    std::uint64_t run_start = 0;
    std::int64_t run_cap = -1;
    bool run_inject = false;
    run->add_option("--graph", run_graph, "graph file")->required();
    run->add_option("--values", run_values, "value file")->required();
    run->add_option("--algorithm", run_algo, "sd|rsd|rsd-converge|sep-det|sep-quantum")->required();
    run->add_option("--start", run_start, "start vertex for sd");
    run->add_option("--cap", run_cap, "step cap for sd (default: none)");
    run->add_flag("--inject", run_inject, "enable error injection (sep-quantum)");
    run->add_option("--trace", run_trace, "write the JSONL trace here instead of stdout");
    run->add_option("--strategy", run_strategy, "separator strategy for sep-* algorithms");

    // experiment
    auto* exp = app.add_subcommand("experiment", "multi-trial experiment with scaling fits");
    std::string exp_config;
    bool exp_fresh = false;
    exp->add_option("--config", exp_config, "experiment config JSON")->required();
    exp->add_flag("--fresh", exp_fresh, "ignore an existing CSV instead of resuming");

    // verify
    auto* ver = app.add_subcommand("verify", "check whether a vertex is a local minimum");
    std::string ver_graph, ver_values;
    std::uint64_t ver_vertex = 0;
    ver->add_option("--graph", ver_graph, "graph file")->required();
    ver->add_option("--values", ver_values, "value file")->required();
    ver->add_option("--vertex", ver_vertex, "vertex to check")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "crossover table against the generic algorithms");
    std::string cmp_csv;
    cmp->add_option("--csv", cmp_csv, "experiment CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            if (!is_family(gen_family)) throw UsageError("unknown family: " + gen_family);
            Graph g = [&]() {
                if (gen_family == "grid" || gen_family == "tgrid") {
                    std::size_t rows = gen_rows, cols = gen_cols;
                    if (gen_size > 0) rows = cols = gen_size;
                    if (rows == 0 || cols == 0)
                        throw UsageError("grid families need --size or --rows/--cols");
                    return gen_family == "grid" ? make_grid(rows, cols)
                                                : make_triangulated_grid(rows, cols, seed);
                }
                if (gen_n == 0) throw UsageError("--n is required for family " + gen_family);
                return make_instance(gen_family, gen_n, seed);
            }();
            ValueFunction f = make_value_instance(gen_values, g, seed);
            std::string prefix = gen_out.empty()
                                     ? gen_family + "-" + std::to_string(g.num_vertices())
                                     : gen_out;
            write_graph_file(prefix + ".graph", g);
            write_values_file(prefix + ".values", f);

            std::size_t n = g.num_vertices();
            json report{{"family", gen_family},
                        {"n", n},
                        {"m", g.num_edges()},
                        {"genus_bound", g.genus_bound()},
                        {"max_degree", max_degree(g)},
                        {"separator_size_bound", ght_size_bound(n, g.genus_bound())},
                        {"graph_file", prefix + ".graph"},
                        {"values_file", prefix + ".values"}};
            if (n >= 3) {
                report["strong_separator_size_bound"] = strong_size_bound(n, g.genus_bound());
                report["edge_bound_ok"] = check_edge_bound(g);
                if (g.genus_bound() == 0 && !check_edge_bound(g))
                    throw UsageError("generated genus-0 graph violates the edge bound");
            }
            std::cout << report.dump(2) << '\n';
            return 0;
        }

        if (sep->parsed()) {
            Graph g = read_graph_file(sep_graph);
            SeparatorReport rep = build_separator(g, sep_strategy);
            json out = separator_json(rep);
            if (sep_out.empty()) {
                std::cout << out.dump(2) << '\n';
            } else {
                std::ofstream os(sep_out);
                if (!os) throw UsageError("cannot open " + sep_out);
                os << out.dump(2) << '\n';
            }
            return 0;
        }

        if (run->parsed()) {
            Graph g = read_graph_file(run_graph);
            ValueFunction f = read_values_file(run_values, g.num_vertices());
            if (!is_algorithm_selector(run_algo))
                throw UsageError("unknown algorithm selector: " + run_algo);
            std::optional<std::size_t> cap;
            if (run_cap >= 0) cap = static_cast<std::size_t>(run_cap);
            SearchResult res = run_algorithm(run_algo, g, f, seed, run_inject, cap,
                                             static_cast<VertexId>(run_start), run_strategy);
            if (run_trace.empty()) {
                dump_trace(std::cout, res);
            } else {
                std::ofstream os(run_trace);
                if (!os) throw UsageError("cannot open " + run_trace);
                dump_trace(os, res);
            }
            if (format == "csv") {
                CellResult row;
                row.n = g.num_vertices();
                row.d = max_degree(g);
                row.genus = g.genus_bound();
                row.algorithm = run_algo;
                row.raw_queries = res.trace.total_raw;
                row.modeled_cost = res.trace.total_modeled;
                row.depth = res.trace.depth;
                row.success = res.verified;
                std::cout << csv_header() << '\n' << csv_row(row) << '\n';
            }
            return res.verified ? 0 : 1;
        }

        if (exp->parsed()) {
            ExperimentConfig cfg = read_experiment_config(exp_config);
            std::string csv_path = cfg.out + ".csv";
            ExperimentOutput out =
                run_experiment(cfg, jobs, exp_fresh ? std::string() : csv_path);
            write_experiment_csv(csv_path, cfg, out.rows);
            std::ofstream os(cfg.out + ".summary.json");
            if (!os) throw UsageError("cannot open " + cfg.out + ".summary.json");
            os << out.summary.dump(2) << '\n';
            std::cout << out.summary.dump(2) << '\n';
            return 0;
        }

        if (ver->parsed()) {
            Graph g = read_graph_file(ver_graph);
            ValueFunction f = read_values_file(ver_values, g.num_vertices());
            auto v = static_cast<VertexId>(ver_vertex);
            CountingOracle oracle(f);
            LocalMinCheck check = is_local_min(g, oracle, v);
            json nbrs = json::array();
            for (const auto& [u, key] : check.certificate.neighbor_keys)
                nbrs.push_back({{"id", u}, {"value", key.value}});
            json cert{{"vertex", v},
                      {"value", f(v)},
                      {"neighbors", nbrs},
                      {"is_local_min", check.is_minimum}};
            std::cout << cert.dump(2) << '\n';
            return check.is_minimum ? 0 : 1;
        }

        if (cmp->parsed()) {
            auto [rows, hash] = read_cells_csv(cmp_csv);
            if (rows.empty()) throw UsageError("no rows in " + cmp_csv);
            (void)hash;
            // group by algorithm and size
            std::vector<std::string> algos;
            std::vector<std::size_t> sizes;
            for (const auto& r : rows) {
                if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end())
                    algos.push_back(r.algorithm);
                if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end())
                    sizes.push_back(r.n);
            }
            std::sort(sizes.begin(), sizes.end());
            std::printf("%8s %14s %12s %12s %12s %12s\n", "n", "algorithm", "mean_raw",
                        "mean_model", "rsd_ref", "qsd_ref");
            for (std::size_t n : sizes) {
                for (const auto& algo : algos) {
                    double raw = 0, modeled = 0, d = 0;
                    std::size_t count = 0;
                    for (const auto& r : rows)
                        if (r.n == n && r.algorithm == algo) {
                            raw += static_cast<double>(r.raw_queries);
                            modeled += static_cast<double>(r.modeled_cost);
                            d = static_cast<double>(r.d);
                            ++count;
                        }
                    if (!count) continue;
                    raw /= static_cast<double>(count);
                    modeled /= static_cast<double>(count);
                    std::printf("%8zu %14s %12.1f %12.1f %12.1f %12.1f\n", n, algo.c_str(), raw,
                                modeled, std::sqrt(static_cast<double>(n) * d),
                                std::cbrt(static_cast<double>(n)) * std::pow(d, 1.0 / 6.0));
                }
            }
            for (const auto& algo : algos) {
                std::vector<std::pair<std::size_t, double>> mean_raw;
                for (std::size_t n : sizes) {
                    double raw = 0;
                    std::size_t count = 0;
                    for (const auto& r : rows)
                        if (r.n == n && r.algorithm == algo) {
                            raw += static_cast<double>(r.raw_queries);
                            ++count;
                        }
                    if (count) mean_raw.emplace_back(n, raw / static_cast<double>(count));
                }
                if (mean_raw.size() >= 4) {
                    ScalingFit fit = fit_power_law(algo, "raw_queries", mean_raw);
                    std::printf("fit %14s raw ~ n^%.3f (residual %.3f)\n", algo.c_str(),
                                fit.exponent, fit.residual);
                }
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
