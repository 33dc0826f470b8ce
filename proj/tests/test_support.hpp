#pragma once

// Shared corpus builders and independent reference oracles for the test and
// acceptance suites. The matrix-based helpers deliberately reimplement graph
// reachability and local-minimum checks without touching the library's
// adjacency-list code paths.

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "locmin/generators.hpp"
#include "locmin/graph.hpp"
#include "locmin/oracle.hpp"
#include "locmin/search.hpp"

namespace locmin_test {

using namespace locmin;

/// Adjacency-matrix reimplementation used as an independent oracle.
struct MatrixGraph {
    std::size_t n = 0;
    std::vector<std::uint8_t> adj; // n*n

    static MatrixGraph from(const Graph& g) {
        MatrixGraph m;
        m.n = g.num_vertices();
        m.adj.assign(m.n * m.n, 0);
        g.for_each_edge([&](VertexId u, VertexId v) {
            m.adj[u * m.n + v] = 1;
            m.adj[v * m.n + u] = 1;
        });
        return m;
    }

    bool edge(std::size_t u, std::size_t v) const { return adj[u * n + v] != 0; }

    std::vector<std::vector<VertexId>> components_all() const {
        std::vector<VertexId> all(n);
        for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<VertexId>(v);
        return components(all);
    }

    /// Reachability partition by recursive DFS over the matrix, restricted
    /// to `members`.
    std::vector<std::vector<VertexId>> components(const std::vector<VertexId>& members) const {
        std::vector<std::uint8_t> in(n, 0);
        for (VertexId v : members) in[v] = 1;
        std::vector<std::uint8_t> seen(n, 0);
        std::vector<std::vector<VertexId>> out;
        for (std::size_t s = 0; s < n; ++s) {
            if (!in[s] || seen[s]) continue;
            std::vector<VertexId> comp;
            dfs(s, in, seen, comp);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    /// All local minima of f under the (value, id) tie-breaking order.
    std::vector<VertexId> local_minima(const ValueFunction& f) const {
        std::vector<VertexId> out;
        for (std::size_t v = 0; v < n; ++v) {
            bool ok = true;
            for (std::size_t u = 0; u < n; ++u) {
                if (!edge(v, u)) continue;
                if (std::pair(f.values[u], u) < std::pair(f.values[v], v)) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(static_cast<VertexId>(v));
        }
        return out;
    }

private:
    void dfs(std::size_t v, const std::vector<std::uint8_t>& in, std::vector<std::uint8_t>& seen,
             std::vector<VertexId>& comp) const {
        seen[v] = 1;
        comp.push_back(static_cast<VertexId>(v));
        for (std::size_t u = 0; u < n; ++u)
            if (in[u] && !seen[u] && edge(v, u)) dfs(u, in, seen, comp);
    }
};

/// Complete binary tree on n vertices (children 2i+1, 2i+2), embedded.
/// Its BFS levels double in size, which drives the planar separator into
/// the fundamental-cycle phase.
inline Graph make_binary_tree(std::size_t n) {
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 1; i < n; ++i)
        edges.emplace_back(static_cast<VertexId>((i - 1) / 2), static_cast<VertexId>(i));
    Graph plain(n, edges, 0);
    std::vector<std::vector<VertexId>> rot(n);
    for (VertexId v = 0; v < n; ++v) {
        auto nb = plain.neighbors(v);
        rot[v].assign(nb.begin(), nb.end());
    }
    return Graph(n, edges, 0, std::move(rot));
}

inline std::size_t depth_cap(std::size_t n) {
    return static_cast<std::size_t>(
        std::ceil(std::log(static_cast<double>(n)) / std::log(1.5) - 1e-9));
}

/// Checks every RunTrace invariant of the separator search: the 2/3 shrink
/// per iteration, the depth cap, the residual-degree bound, and the
/// per-iteration cost decomposition for the active min-finder family.
/// Returns an empty string on success, else a description of the violation.
inline std::string check_search_trace(const SearchResult& res, const Graph& g, MinFinderMode mode) {
    std::ostringstream bad;
    std::size_t n0 = g.num_vertices();
    const auto& its = res.trace.iterations;
    if (its.empty()) return "trace has no iterations";
    if (n0 >= 2 && res.trace.depth > depth_cap(n0))
        bad << "depth " << res.trace.depth << " exceeds cap " << depth_cap(n0) << "; ";
    if (n0 == 1 && res.trace.depth != 1) bad << "single vertex must finish at depth 1; ";

    std::uint64_t k1 = 0, krest = 0;
    if (mode == MinFinderMode::QuantumCost && n0 >= 2) {
        EpsilonSchedule sched = epsilon_schedule(n0);
        k1 = amplification_rounds(sched.eps1);
        krest = amplification_rounds(sched.eps_rest);
    } else if (mode == MinFinderMode::QuantumCost) {
        k1 = krest = amplification_rounds(1.0 / 12.0);
    }
    auto cost_fn = [&](std::size_t s, std::size_t iteration) -> std::uint64_t {
        if (s == 0) return 0;
        if (mode == MinFinderMode::Deterministic || s <= 3) return s;
        return (iteration == 1 ? k1 : krest) * ceil_sqrt(s);
    };

    std::uint64_t sum_raw = 0, sum_modeled = 0;
    std::size_t expect_parent = n0;
    for (std::size_t idx = 0; idx < its.size(); ++idx) {
        const auto& it = its[idx];
        if (it.index != idx + 1) bad << "iteration indices not consecutive; ";
        if (it.parent_size != expect_parent)
            bad << "iteration " << it.index << " parent size " << it.parent_size << " != "
                << expect_parent << "; ";
        bool last = idx + 1 == its.size();
        if (it.emitted != last) bad << "emission must close the trace; ";
        if (!it.emitted) {
            if (it.subproblem_size > 2 * it.parent_size / 3)
                bad << "iteration " << it.index << " violates the 2/3 shrink ("
                    << it.subproblem_size << " of " << it.parent_size << "); ";
            if (it.parent_size >= 3 &&
                it.residual_max_degree * it.residual_max_degree > it.parent_size)
                bad << "iteration " << it.index << " residual degree " << it.residual_max_degree
                    << " exceeds sqrt(" << it.parent_size << "); ";
            expect_parent = it.subproblem_size;
        }
        std::uint64_t modeled_cap =
            cost_fn(it.separator_size, it.index) + cost_fn(it.parent_max_degree, it.index) + 3;
        if (it.cost_modeled > modeled_cap)
            bad << "iteration " << it.index << " modeled cost " << it.cost_modeled
                << " exceeds decomposition " << modeled_cap << "; ";
        std::uint64_t raw_cap = it.separator_size + it.parent_max_degree + 3;
        if (it.cost_raw > raw_cap)
            bad << "iteration " << it.index << " raw cost " << it.cost_raw
                << " exceeds decomposition " << raw_cap << "; ";
        sum_raw += it.cost_raw;
        sum_modeled += it.cost_modeled;
    }
    if (sum_raw != res.trace.total_raw || sum_modeled != res.trace.total_modeled)
        bad << "iteration costs do not add up to the totals; ";
    if (res.trace.depth != its.size()) bad << "depth must equal the iteration count; ";
    return bad.str();
}

/// Error-free runs keep the candidate keys nonincreasing and below every
/// separator minimum seen so far. Returns "" or a violation description.
inline std::string check_monotone_candidates(const SearchResult& res, const ValueFunction& f) {
    std::ostringstream bad;
    std::vector<OrderKey> m_keys;
    OrderKey prev{};
    bool have_prev = false;
    for (const auto& it : res.trace.iterations) {
        OrderKey vk{f(it.v), it.v};
        if (have_prev && prev < vk)
            bad << "candidate key increased at iteration " << it.index << "; ";
        prev = vk;
        have_prev = true;
        if (it.m != kNoVertex) m_keys.push_back(OrderKey{f(it.m), it.m});
        for (const auto& mk : m_keys)
            if (mk < vk) bad << "candidate above a separator minimum at iteration " << it.index
                             << "; ";
    }
    return bad.str();
}

struct NamedGraph {
    std::string name;
    std::unique_ptr<Graph> graph;
    bool planar_embedded = false;
};

struct Instance {
    std::string name;
    const Graph* graph = nullptr;
    std::string value_kind;
    ValueFunction values;
};

struct Corpus {
    std::vector<NamedGraph> graphs;
    std::vector<Instance> instances;

    const Graph* find(const std::string& name) const {
        for (const auto& g : graphs)
            if (g.name == name) return g.graph.get();
        return nullptr;
    }
};

/// The shared instance corpus: grids 4x4..64x64 (plus small rectangles),
/// triangulated grids, random trees up to 4096 vertices, paths, stars, and
/// random plus structured value functions on each.
inline Corpus build_corpus(bool include_nonplanar = false) {
    Corpus corpus;
    auto add = [&](std::string name, Graph g, bool planar) {
        corpus.graphs.push_back(
            NamedGraph{std::move(name), std::make_unique<Graph>(std::move(g)), planar});
    };

    for (std::size_t side : {2, 3, 4, 5, 6, 8, 12, 16, 24, 32, 48, 64})
        add("grid-" + std::to_string(side) + "x" + std::to_string(side), make_grid(side, side),
            true);
    add("grid-1x9", make_grid(1, 9), true);
    add("grid-2x5", make_grid(2, 5), true);
    add("grid-3x7", make_grid(3, 7), true);
    add("grid-4x6", make_grid(4, 6), true);

    for (std::size_t side : {4, 8, 16, 32})
        for (std::uint64_t s : {1, 2})
            add("tgrid-" + std::to_string(side) + "-s" + std::to_string(s),
                make_triangulated_grid(side, side, s), true);

    for (std::size_t n : {2, 10, 50, 100, 500, 1000, 4096})
        for (std::uint64_t s : {1, 2})
            add("tree-" + std::to_string(n) + "-s" + std::to_string(s), make_random_tree(n, s),
                true);

    for (std::size_t n : {1, 2, 3, 5, 9, 100, 1000}) add("path-" + std::to_string(n), make_path(n), true);
    for (std::size_t n : {2, 10, 100, 1000}) add("star-" + std::to_string(n), make_star(n), true);
    add("btree-1023", make_binary_tree(1023), true);

    if (include_nonplanar) {
        add("complete-5", make_complete(5), false);
        add("complete-9", make_complete(9), false);
        add("complete-16", make_complete(16), false);
    }

    for (const auto& ng : corpus.graphs) {
        const Graph& g = *ng.graph;
        for (std::uint64_t s : {101, 202, 303, 404}) {
            Instance inst;
            inst.name = ng.name + "/random-" + std::to_string(s);
            inst.graph = &g;
            inst.value_kind = "random";
            inst.values = random_values(g, s);
            corpus.instances.push_back(std::move(inst));
        }
        if (g.grid_dims()) {
            Instance rm{ng.name + "/row-major", &g, "row-major", row_major(g)};
            corpus.instances.push_back(std::move(rm));
            auto dims = *g.grid_dims();
            Instance va{ng.name + "/valley", &g, "valley",
                        valley(g, dims.rows / 2, dims.cols / 2)};
            corpus.instances.push_back(std::move(va));
        }
        if (ng.name.rfind("path-", 0) == 0 && g.num_vertices() > 1) {
            Instance st{ng.name + "/staircase", &g, "staircase", staircase_path(g, 7)};
            corpus.instances.push_back(std::move(st));
        }
    }
    return corpus;
}

} // namespace locmin_test
