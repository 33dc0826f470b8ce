#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "locmin/common.hpp"
#include "locmin/generators.hpp"
#include "locmin/graph.hpp"
#include "locmin/oracle.hpp"
#include "locmin/search.hpp"

namespace locmin {

using json = nlohmann::json;

inline bool is_algorithm_selector(const std::string& s) {
    return s == "sd" || s == "rsd" || s == "rsd-converge" || s == "sep-det" || s == "sep-quantum";
}

inline bool is_family(const std::string& s) {
    return s == "grid" || s == "tgrid" || s == "tree" || s == "path" || s == "star" ||
           s == "complete";
}

inline bool is_value_family(const std::string& s) {
    return s == "random" || s == "row-major" || s == "valley" || s == "staircase";
}

/// Builds a family member with n vertices. Grid families require n to be a
/// perfect square.
inline Graph make_instance(const std::string& family, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw UsageError("instance size must be positive");
    if (family == "grid" || family == "tgrid") {
        auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
        if (side * side != n)
            throw UsageError("grid families need a square vertex count, got " + std::to_string(n));
        return family == "grid" ? make_grid(side, side) : make_triangulated_grid(side, side, seed);
    }
    if (family == "tree") return make_random_tree(n, seed);
    if (family == "path") return make_path(n);
    if (family == "star") return make_star(n);
    if (family == "complete") return make_complete(n);
    throw UsageError("unknown graph family: " + family);
}

inline ValueFunction make_value_instance(const std::string& kind, const Graph& g,
                                         std::uint64_t seed) {
    if (kind == "random") return random_values(g, seed);
    if (kind == "row-major") return row_major(g);
    if (kind == "valley") {
        auto dims = g.grid_dims();
        if (!dims) throw UsageError("valley values require a grid instance");
        return valley(g, dims->rows / 2, dims->cols / 2);
    }
    if (kind == "staircase") return staircase_path(g, seed);
    throw UsageError("unknown value family: " + kind);
}

/// One run of a selected algorithm on (g, f) with a private oracle.
inline SearchResult run_algorithm(const std::string& algo, const Graph& g, const ValueFunction& f,
                                  std::uint64_t seed, bool inject,
                                  std::optional<std::size_t> step_cap = std::nullopt,
                                  VertexId start = 0, const std::string& strategy = "auto") {
    CountingOracle oracle(f);
    if (algo == "sd") return steepest_descent(g, oracle, start, step_cap);
    if (algo == "rsd") return randomized_steepest_descent(g, oracle, seed, false);
    if (algo == "rsd-converge") return randomized_steepest_descent(g, oracle, seed, true);
    if (algo == "sep-det")
        return separator_local_search(g, oracle,
                                      MinFinderSpec{MinFinderMode::Deterministic, false, seed},
                                      strategy);
    if (algo == "sep-quantum")
        return separator_local_search(
            g, oracle, MinFinderSpec{MinFinderMode::QuantumCost, inject, seed}, strategy);
    throw UsageError("unknown algorithm selector: " + algo);
}

// ── Experiments ──────────────────────────────────────────────────────

struct ExperimentConfig {
    std::string family;
    std::vector<std::size_t> sizes;
    std::string values = "random";
    std::vector<std::string> algorithms;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string out = "experiment";
    bool inject = false;
};

inline void validate_config(const ExperimentConfig& cfg) {
    if (!is_family(cfg.family)) throw UsageError("unknown graph family: " + cfg.family);
    if (cfg.sizes.empty()) throw UsageError("config needs at least one size");
    for (std::size_t s : cfg.sizes)
        if (s == 0) throw UsageError("sizes must be >= 1");
    if (!is_value_family(cfg.values)) throw UsageError("unknown value family: " + cfg.values);
    if (cfg.algorithms.empty()) throw UsageError("config needs at least one algorithm");
    for (const auto& a : cfg.algorithms)
        if (!is_algorithm_selector(a)) throw UsageError("unknown algorithm selector: " + a);
    if (cfg.trials == 0) throw UsageError("trials must be >= 1");
}

inline ExperimentConfig parse_experiment_config(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.family = j.at("family").get<std::string>();
        cfg.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
        if (j.contains("values")) cfg.values = j["values"].get<std::string>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("inject")) cfg.inject = j["inject"].get<bool>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad experiment config: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

inline ExperimentConfig read_experiment_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    return parse_experiment_config(j);
}

struct CellResult {
    std::size_t n = 0;
    std::size_t d = 0;
    unsigned genus = 0;
    std::string algorithm;
    std::size_t trial = 0;
    std::uint64_t raw_queries = 0;
    std::uint64_t modeled_cost = 0;
    std::size_t depth = 0;
    bool success = false;
    double wall_ms = 0.0;
};

struct ScalingFit {
    std::string algorithm;
    std::string metric; // raw_queries | modeled_cost
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    std::size_t points = 0;
};

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t config_hash(const ExperimentConfig& cfg) {
    json j{{"family", cfg.family}, {"sizes", cfg.sizes},     {"values", cfg.values},
           {"algorithms", cfg.algorithms}, {"trials", cfg.trials}, {"seed", cfg.seed},
           {"inject", cfg.inject}};
    return fnv1a64(j.dump());
}

/// Per-cell seeds depend only on (config seed, n, algorithm, trial), never
/// on scheduling; same for the shared value-function seeds.
inline std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t n,
                               const std::string& algo, std::size_t trial) {
    return mix_seed(mix_seed(mix_seed(cfg.seed, n), fnv1a64(algo)), trial);
}

inline std::uint64_t value_seed(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
    return mix_seed(mix_seed(cfg.seed ^ fnv1a64("values"), n), trial);
}

/// log-log least squares of cost against n over per-size means.
inline ScalingFit fit_power_law(const std::string& algorithm, const std::string& metric,
                                const std::vector<std::pair<std::size_t, double>>& size_means) {
    ScalingFit fit;
    fit.algorithm = algorithm;
    fit.metric = metric;
    fit.points = size_means.size();
    if (size_means.size() < 2) return fit;
    double sx = 0, sy = 0;
    for (auto [n, mean] : size_means) {
        sx += std::log(static_cast<double>(n));
        sy += std::log(std::max(mean, 1e-12));
    }
    double mx = sx / static_cast<double>(size_means.size());
    double my = sy / static_cast<double>(size_means.size());
    double num = 0, den = 0;
    for (auto [n, mean] : size_means) {
        double dx = std::log(static_cast<double>(n)) - mx;
        double dy = std::log(std::max(mean, 1e-12)) - my;
        num += dx * dy;
        den += dx * dx;
    }
    fit.exponent = den > 0 ? num / den : 0.0;
    fit.intercept = my - fit.exponent * mx;
    double sq = 0;
    for (auto [n, mean] : size_means) {
        double pred = fit.intercept + fit.exponent * std::log(static_cast<double>(n));
        double err = std::log(std::max(mean, 1e-12)) - pred;
        sq += err * err;
    }
    fit.residual = std::sqrt(sq / static_cast<double>(size_means.size()));
    return fit;
}

struct ExperimentOutput {
    std::vector<CellResult> rows;
    std::vector<ScalingFit> fits;
    json summary;
    std::size_t resumed_cells = 0;
};

inline std::string csv_header() {
    return "n,d,g,algorithm,trial,raw_queries,modeled_cost,depth,success,wall_ms";
}

inline std::string csv_row(const CellResult& r) {
    std::ostringstream os;
    os << r.n << ',' << r.d << ',' << r.genus << ',' << r.algorithm << ',' << r.trial << ','
       << r.raw_queries << ',' << r.modeled_cost << ',' << r.depth << ',' << (r.success ? 1 : 0)
       << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    os << buf;
    return os.str();
}

/// Parses an experiment CSV; returns rows and the config hash found in the
/// leading comment (0 when absent).
inline std::pair<std::vector<CellResult>, std::uint64_t> read_cells_csv(const std::string& path) {
    std::vector<CellResult> rows;
    std::uint64_t hash = 0;
    std::ifstream is(path);
    if (!is) return {rows, hash};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("config=");
            if (pos != std::string::npos) hash = std::stoull(line.substr(pos + 7), nullptr, 16);
            continue;
        }
        if (line.rfind("n,", 0) == 0) continue; // header
        std::istringstream ls(line);
        std::string field;
        CellResult r;
        auto next = [&]() {
            if (!std::getline(ls, field, ',')) throw UsageError("bad CSV row: " + line);
            return field;
        };
        r.n = std::stoull(next());
        r.d = std::stoull(next());
        r.genus = static_cast<unsigned>(std::stoul(next()));
        r.algorithm = next();
        r.trial = std::stoull(next());
        r.raw_queries = std::stoull(next());
        r.modeled_cost = std::stoull(next());
        r.depth = std::stoull(next());
        r.success = next() == "1";
        r.wall_ms = std::stod(next());
        rows.push_back(std::move(r));
    }
    return {rows, hash};
}

/// Runs (or resumes) an experiment. Completed cells found in an existing CSV
/// with a matching config hash are kept as-is; missing cells run, possibly
/// on several threads. The merged output order is (size, algorithm, trial),
/// independent of scheduling.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1,
                                       const std::string& resume_csv_path = "") {
    validate_config(cfg);
    ExperimentOutput out;
    const std::uint64_t hash = config_hash(cfg);

    std::unordered_set<std::string> have;
    std::vector<CellResult> old_rows;
    if (!resume_csv_path.empty()) {
        auto [rows, old_hash] = read_cells_csv(resume_csv_path);
        if (old_hash == hash) {
            old_rows = std::move(rows);
            for (const auto& r : old_rows)
                have.insert(r.algorithm + ":" + std::to_string(r.n) + ":" + std::to_string(r.trial));
        }
    }

    // Instances are shared across algorithms and trials; graphs are immutable
    // and safe for concurrent readers.
    std::vector<Graph> graphs;
    graphs.reserve(cfg.sizes.size());
    for (std::size_t n : cfg.sizes) graphs.push_back(make_instance(cfg.family, n, cfg.seed));
    std::vector<std::vector<ValueFunction>> values(cfg.sizes.size());
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        values[si].reserve(cfg.trials);
        for (std::size_t t = 0; t < cfg.trials; ++t)
            values[si].push_back(
                make_value_instance(cfg.values, graphs[si], value_seed(cfg, cfg.sizes[si], t)));
    }

    struct Cell {
        std::size_t size_index, algo_index, trial;
        bool resumed = false;
    };
    std::vector<Cell> cells;
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si)
        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai)
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                Cell c{si, ai, t, false};
                std::string key = cfg.algorithms[ai] + ":" + std::to_string(cfg.sizes[si]) + ":" +
                                  std::to_string(t);
                c.resumed = have.count(key) > 0;
                cells.push_back(c);
            }

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& c = cells[i];
            if (c.resumed) continue;
            const std::string& algo = cfg.algorithms[c.algo_index];
            const Graph& g = graphs[c.size_index];
            CellResult r;
            r.n = g.num_vertices();
            r.d = max_degree(g);
            r.genus = g.genus_bound();
            r.algorithm = algo;
            r.trial = c.trial;
            const ValueFunction& f = values[c.size_index][c.trial];
            auto t0 = std::chrono::steady_clock::now();
            SearchResult sr = run_algorithm(algo, g, f, cell_seed(cfg, r.n, algo, c.trial),
                                            cfg.inject);
            auto t1 = std::chrono::steady_clock::now();
            r.raw_queries = sr.trace.total_raw;
            r.modeled_cost = sr.trace.total_modeled;
            r.depth = sr.trace.depth;
            r.success = sr.verified;
            r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            results[i] = std::move(r);
        }
    };
    std::size_t nthreads = std::max<std::size_t>(1, jobs);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Merge: resumed cells take their old rows.
    auto find_old = [&](const std::string& algo, std::size_t n, std::size_t trial) {
        for (const auto& r : old_rows)
            if (r.algorithm == algo && r.n == n && r.trial == trial) return r;
        throw UsageError("resume bookkeeping lost a row");
    };
    out.rows.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        if (c.resumed) {
            out.rows.push_back(
                find_old(cfg.algorithms[c.algo_index], cfg.sizes[c.size_index], c.trial));
            ++out.resumed_cells;
        } else {
            out.rows.push_back(results[i]);
        }
    }

    // Per-(algorithm, size) statistics and fits.
    json stats = json::array();
    json tripwire = json::array();
    for (const auto& algo : cfg.algorithms) {
        std::vector<std::pair<std::size_t, double>> mean_raw, mean_modeled;
        for (std::size_t n : cfg.sizes) {
            std::vector<double> raws, modeleds;
            std::size_t ok = 0, total = 0;
            for (const auto& r : out.rows) {
                if (r.algorithm != algo || r.n != n) continue;
                raws.push_back(static_cast<double>(r.raw_queries));
                modeleds.push_back(static_cast<double>(r.modeled_cost));
                ok += r.success ? 1 : 0;
                ++total;
            }
            if (raws.empty()) continue;
            auto mean = [](std::vector<double>& xs) {
                double s = 0;
                for (double x : xs) s += x;
                return s / static_cast<double>(xs.size());
            };
            auto p95 = [](std::vector<double> xs) {
                std::sort(xs.begin(), xs.end());
                std::size_t idx =
                    xs.empty() ? 0
                               : std::min(xs.size() - 1,
                                          static_cast<std::size_t>(
                                              std::ceil(0.95 * static_cast<double>(xs.size()))) -
                                              1);
                return xs[idx];
            };
            double mr = mean(raws), mm = mean(modeleds);
            mean_raw.emplace_back(n, mr);
            mean_modeled.emplace_back(n, mm);
            stats.push_back({{"algorithm", algo},
                             {"n", n},
                             {"mean_raw", mr},
                             {"p95_raw", p95(raws)},
                             {"mean_modeled", mm},
                             {"p95_modeled", p95(modeleds)},
                             {"success_rate", total ? static_cast<double>(ok) / total : 0.0}});
        }
        if (cfg.sizes.size() >= 4) {
            out.fits.push_back(fit_power_law(algo, "raw_queries", mean_raw));
            bool any_modeled = false;
            for (auto& [n, m] : mean_modeled) any_modeled |= m > 0;
            if (any_modeled) out.fits.push_back(fit_power_law(algo, "modeled_cost", mean_modeled));
        }
    }

    // Regression tripwire: sep-det on grids must stay below d + 60*sqrt(n).
    if (cfg.family == "grid") {
        for (const auto& r : out.rows) {
            if (r.algorithm != "sep-det") continue;
            double bound = static_cast<double>(r.d) + 60.0 * std::sqrt(static_cast<double>(r.n));
            if (static_cast<double>(r.raw_queries) > bound)
                tripwire.push_back({{"algorithm", r.algorithm},
                                    {"n", r.n},
                                    {"trial", r.trial},
                                    {"raw_queries", r.raw_queries},
                                    {"bound", bound}});
        }
    }

    json fits = json::array();
    for (const auto& f : out.fits)
        fits.push_back({{"algorithm", f.algorithm},
                        {"metric", f.metric},
                        {"exponent", f.exponent},
                        {"intercept", f.intercept},
                        {"residual", f.residual},
                        {"points", f.points}});

    // Analytic reference curves for the generic algorithms.
    json curves = json::array();
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        double n = static_cast<double>(cfg.sizes[si]);
        double d = static_cast<double>(max_degree(graphs[si]));
        curves.push_back({{"n", cfg.sizes[si]},
                          {"d", d},
                          {"rsd_ref", std::sqrt(n * d)},
                          {"qsd_ref", std::cbrt(n) * std::pow(d, 1.0 / 6.0)}});
    }

    out.summary = json{{"family", cfg.family},
                       {"values", cfg.values},
                       {"sizes", cfg.sizes},
                       {"algorithms", cfg.algorithms},
                       {"trials", cfg.trials},
                       {"seed", cfg.seed},
                       {"inject", cfg.inject},
                       {"config_hash", hash},
                       {"resumed_cells", out.resumed_cells},
                       {"stats", stats},
                       {"fits", fits},
                       {"reference_curves", curves},
                       {"tripwire_violations", tripwire}};
    return out;
}

inline void write_experiment_csv(const std::string& path, const ExperimentConfig& cfg,
                                 const std::vector<CellResult>& rows) {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open " + path + " for writing");
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    os << "# locmin-experiment config=" << hex << '\n';
    os << csv_header() << '\n';
    for (const auto& r : rows) os << csv_row(r) << '\n';
}

} // namespace locmin
