#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locmin/common.hpp"
#include "locmin/graph.hpp"
#include "locmin/oracle.hpp"
#include "locmin/provider.hpp"
#include "locmin/separator.hpp"

namespace locmin {

enum class MinFinderMode { Deterministic, QuantumCost };

/// Configuration of the min-finder family A_i used by the separator search.
/// In quantum-cost mode each argmin over a set larger than 3 charges
/// k * ceil(sqrt(|S|)) with k = ceil(log2(1/eps)); with inject_errors it
/// also returns a wrong element with probability eps.
struct MinFinderSpec {
    MinFinderMode mode = MinFinderMode::Deterministic;
    bool inject_errors = false;
    std::uint64_t seed = 0;
};

/// Per-level error probabilities: 1/12 for the first call, then
/// 1/(12*log_{3/2} n), which keeps the total failure probability <= 1/3.
struct EpsilonSchedule {
    double eps1 = 1.0 / 12.0;
    double eps_rest = 0.0;
};

inline EpsilonSchedule epsilon_schedule(std::size_t n) {
    if (n < 2) throw UsageError("epsilon schedule requires n >= 2");
    double log32 = std::log(static_cast<double>(n)) / std::log(1.5);
    return EpsilonSchedule{1.0 / 12.0, 1.0 / (12.0 * log32)};
}

/// Smallest k with 2^-k <= eps.
inline std::uint64_t amplification_rounds(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("error probability must be in (0,1)");
    return static_cast<std::uint64_t>(
        std::max(1.0, std::ceil(std::log2(1.0 / eps) - 1e-12)));
}

inline std::uint64_t ceil_sqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while (r * r < x) ++r;
    return r;
}

/// Exhaustive argmin: queries all of S, charges |S| to the modeled ledger.
/// Empty S yields the kNoVertex sentinel.
inline VertexId argmin_det(CountingOracle& oracle, std::span<const VertexId> s) {
    if (s.empty()) return kNoVertex;
    oracle.charge_modeled(s.size());
    VertexId arg = kNoVertex;
    OrderKey best{};
    for (VertexId v : s) {
        OrderKey k = oracle.query(v);
        if (arg == kNoVertex || k < best) {
            best = k;
            arg = v;
        }
    }
    return arg;
}

/// Simulated quantum minimum finding. Sets of size <= 3 fall back to
/// exhaustive search. Larger sets charge k*ceil(sqrt(|S|)) modeled queries;
/// the argmin itself is computed classically (those reads are not charged
/// to the modeled ledger). With injection, returns a uniformly random
/// element of S minus the argmin with probability eps.
inline VertexId argmin_quantum_sim(CountingOracle& oracle, std::span<const VertexId> s, double eps,
                                   bool inject, SplitMix64& rng) {
    if (s.empty()) return kNoVertex;
    if (s.size() <= 3) return argmin_det(oracle, s);
    std::uint64_t k = amplification_rounds(eps);
    oracle.charge_modeled(k * ceil_sqrt(s.size()));
    VertexId arg = kNoVertex;
    OrderKey best{};
    std::size_t arg_pos = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        OrderKey key = oracle.query(s[i]);
        if (arg == kNoVertex || key < best) {
            best = key;
            arg = s[i];
            arg_pos = i;
        }
    }
    if (inject && rng.next_unit() < eps) {
        std::size_t pick = rng.next_below(s.size() - 1);
        if (pick >= arg_pos) ++pick;
        return s[pick];
    }
    return arg;
}

// ── Traces and results ───────────────────────────────────────────────

/// One iteration of the separator search, i.e. one level of the recursion.
struct IterationRecord {
    std::size_t index = 0;               // i, starting at 1
    std::string strategy;                // separator strategy used
    std::size_t separator_size = 0;      // |C^(i)| after strongification
    VertexId m = kNoVertex;              // argmin over C^(i)
    VertexId z = kNoVertex;              // argmin over the neighbors of m
    VertexId v = kNoVertex;              // running candidate v^(i)
    std::size_t parent_size = 0;         // |V^(i-1)|
    std::size_t parent_max_degree = 0;   // d_{i-1}
    std::size_t subproblem_size = 0;     // |V^(i)|; 0 on the final iteration
    std::size_t residual_max_degree = 0; // d_i; 0 on the final iteration
    std::uint64_t cost_raw = 0;          // raw-query cost L^(i)
    std::uint64_t cost_modeled = 0;      // modeled cost of this iteration
    bool emitted = false;
    bool escaped_into_separator = false; // v landed in C (injected errors only)
};

struct RunTrace {
    std::vector<IterationRecord> iterations;
    std::uint64_t total_raw = 0;
    std::uint64_t total_modeled = 0;
    std::size_t depth = 0; // iteration count for the separator search; move
                           // count for descents
};

struct SearchResult {
    VertexId vertex = kNoVertex;
    RunTrace trace;
    bool verified = false;
};

// ── Descent algorithms ───────────────────────────────────────────────

/// Steepest descent: repeatedly move to the strictly smallest neighbor key.
/// Without a cap this terminates in a local minimum; with a cap it returns
/// the last visited vertex after at most step_cap moves.
template <GraphLike G>
SearchResult steepest_descent(const G& g, CountingOracle& oracle, VertexId start,
                              std::optional<std::size_t> step_cap = std::nullopt) {
    if (!g.contains(start)) throw UsageError("descent start vertex not in graph");
    std::uint64_t raw0 = oracle.raw_queries(), mod0 = oracle.modeled_cost();
    VertexId at = start;
    OrderKey at_key = oracle.query(at);
    std::size_t moves = 0;
    for (;;) {
        if (step_cap && moves == *step_cap) break;
        VertexId next = kNoVertex;
        OrderKey next_key{};
        g.for_neighbors(at, [&](VertexId u) {
            OrderKey k = oracle.query(u);
            if (next == kNoVertex || k < next_key) {
                next_key = k;
                next = u;
            }
        });
        if (next == kNoVertex || !(next_key < at_key)) break;
        at = next;
        at_key = next_key;
        ++moves;
    }
    SearchResult out;
    out.vertex = at;
    out.trace.depth = moves;
    out.trace.total_raw = oracle.raw_queries() - raw0;
    out.trace.total_modeled = oracle.modeled_cost() - mod0;
    out.verified = verify_local_min(g, oracle.function(), at);
    return out;
}

/// Aldous-style randomized steepest descent: sample ceil(sqrt(n*d)) vertices
/// uniformly with replacement, then descend from the best sample for at most
/// that many steps. run_to_convergence removes the cap, so the result is
/// always a verified local minimum.
template <GraphLike G>
SearchResult randomized_steepest_descent(const G& g, CountingOracle& oracle, std::uint64_t seed,
                                         bool run_to_convergence = false) {
    std::size_t n = g.num_vertices();
    if (n == 0) throw UsageError("randomized descent requires a nonempty graph");
    std::vector<VertexId> vs;
    vs.reserve(n);
    g.for_each_vertex([&](VertexId v) { vs.push_back(v); });

    std::size_t d = max_degree(g);
    if (d == 0) {
        // Edgeless: every vertex is a local minimum.
        SearchResult out;
        out.vertex = vs.front();
        oracle.query(out.vertex);
        out.trace.total_raw = 1;
        out.verified = true;
        return out;
    }
    std::uint64_t raw0 = oracle.raw_queries(), mod0 = oracle.modeled_cost();
    std::size_t samples = ceil_sqrt(static_cast<std::uint64_t>(n) * d);
    SplitMix64 rng(mix_seed(seed, kStreamSampling));
    VertexId best = kNoVertex;
    OrderKey best_key{};
    for (std::size_t i = 0; i < samples; ++i) {
        VertexId v = vs[rng.next_below(n)];
        OrderKey k = oracle.query(v);
        if (best == kNoVertex || k < best_key) {
            best_key = k;
            best = v;
        }
    }
    SearchResult out = steepest_descent(
        g, oracle, best, run_to_convergence ? std::nullopt : std::optional<std::size_t>(samples));
    out.trace.total_raw = oracle.raw_queries() - raw0;
    out.trace.total_modeled = oracle.modeled_cost() - mod0;
    return out;
}

// ── Algorithm 1: separator-based local search ────────────────────────

/// Divide-and-conquer local search. Each iteration strongifies a separator
/// of the current subgraph (trivial separator below 3 vertices), locates the
/// separator minimum m and its best neighbor z with the min-finder family,
/// and either outputs the running candidate or descends into the component
/// that contains it. Deterministic mode always returns a local minimum;
/// quantum-cost mode with injected errors succeeds with probability >= 2/3.
inline SearchResult separator_local_search(const Graph& g, CountingOracle& oracle,
                                           const MinFinderSpec& spec,
                                           const std::string& strategy = "auto") {
    std::size_t n0 = g.num_vertices();
    if (n0 == 0) throw UsageError("separator search requires a nonempty graph");
    if (!is_connected(g)) throw UsageError("separator search requires a connected graph");

    EpsilonSchedule sched =
        n0 >= 2 ? epsilon_schedule(n0) : EpsilonSchedule{1.0 / 12.0, 1.0 / 12.0};
    SplitMix64 inject_rng(mix_seed(spec.seed, kStreamInjection));

    auto argmin = [&](std::span<const VertexId> s, std::size_t iteration) {
        if (spec.mode == MinFinderMode::Deterministic) return argmin_det(oracle, s);
        double eps = iteration == 1 ? sched.eps1 : sched.eps_rest;
        return argmin_quantum_sim(oracle, s, eps, spec.inject_errors, inject_rng);
    };

    std::uint64_t raw0 = oracle.raw_queries(), mod0 = oracle.modeled_cost();
    std::vector<VertexId> members(n0);
    for (std::size_t i = 0; i < n0; ++i) members[i] = static_cast<VertexId>(i);
    VertexId v_prev = 0; // any vertex of G; not pre-queried

    SearchResult out;
    for (std::size_t i = 1;; ++i) {
        SubgraphView view(g, members);
        IterationRecord rec;
        rec.index = i;
        rec.parent_size = view.num_vertices();
        rec.parent_max_degree = max_degree(view);
        std::uint64_t raw_before = oracle.raw_queries(), mod_before = oracle.modeled_cost();

        std::vector<VertexId> cut;
        if (view.num_vertices() <= 2) {
            cut = view.vertices();
            rec.strategy = "trivial";
        } else {
            SeparatorReport rep = build_separator(view, strategy);
            cut = strongify(view, rep.separator).combined.vertices;
            rec.strategy = rep.strategy;
        }
        rec.separator_size = cut.size();

        VertexId m = argmin(cut, i);
        std::vector<VertexId> m_neighbors;
        if (m != kNoVertex) m_neighbors = view.neighbors(m);
        VertexId z = argmin(m_neighbors, i);

        std::vector<VertexId> candidates;
        for (VertexId c : {v_prev, m, z})
            if (c != kNoVertex &&
                std::find(candidates.begin(), candidates.end(), c) == candidates.end())
                candidates.push_back(c);
        VertexId v = argmin(candidates, i);

        rec.m = m;
        rec.z = z;
        rec.v = v;

        bool stop = false;
        if (v == m) {
            out.vertex = v;
            rec.emitted = true;
            stop = true;
        } else {
            std::vector<std::uint8_t> in_cut(g.id_bound(), 0);
            for (VertexId c : cut) in_cut[c] = 1;
            if (in_cut[v]) {
                // Only reachable by injected errors: the selected candidate
                // sits inside the separator, so no component contains it.
                out.vertex = v;
                rec.emitted = true;
                rec.escaped_into_separator = true;
                stop = true;
            } else {
                std::vector<VertexId> comp{v};
                std::vector<std::uint8_t> seen(g.id_bound(), 0);
                seen[v] = 1;
                for (std::size_t head = 0; head < comp.size(); ++head) {
                    view.for_neighbors(comp[head], [&](VertexId u) {
                        if (!seen[u] && !in_cut[u]) {
                            seen[u] = 1;
                            comp.push_back(u);
                        }
                    });
                }
                std::sort(comp.begin(), comp.end());
                members = std::move(comp);
                v_prev = v;
                rec.subproblem_size = members.size();
                rec.residual_max_degree = max_degree(SubgraphView(g, members));
            }
        }

        rec.cost_raw = oracle.raw_queries() - raw_before;
        rec.cost_modeled = oracle.modeled_cost() - mod_before;
        out.trace.iterations.push_back(std::move(rec));
        if (stop) {
            out.trace.depth = i;
            break;
        }
    }
    out.trace.total_raw = oracle.raw_queries() - raw0;
    out.trace.total_modeled = oracle.modeled_cost() - mod0;
    out.verified = verify_local_min(g, oracle.function(), out.vertex);
    return out;
}

} // namespace locmin
