#pragma once

#include <compare>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "locmin/common.hpp"
#include "locmin/graph.hpp"

namespace locmin {

/// Total map f: V -> N over the vertices of one graph.
struct ValueFunction {
    std::vector<std::uint64_t> values;

    std::size_t size() const { return values.size(); }

    std::uint64_t operator()(VertexId v) const {
        if (v >= values.size())
            throw UsageError("vertex " + std::to_string(v) + " outside value-function domain");
        return values[v];
    }
};

/// Comparison key (f(v), v). Lexicographic order makes every argmin unique:
/// distinct vertices always compare differently, so ties in f never leak
/// into the algorithms.
struct OrderKey {
    std::uint64_t value = 0;
    VertexId vertex = kNoVertex;

    friend auto operator<=>(const OrderKey&, const OrderKey&) = default;
};

/// Memoizing query counter around a ValueFunction. raw_queries counts
/// distinct vertices queried (re-queries are free). modeled_cost is the
/// charged quantum-model cost; only the min-finders write it.
class CountingOracle {
public:
    explicit CountingOracle(const ValueFunction& fn)
        : fn_(&fn), cached_(fn.size(), 0) {}

    OrderKey query(VertexId v) {
        if (v >= cached_.size())
            throw UsageError("vertex " + std::to_string(v) + " outside oracle domain");
        if (!cached_[v]) {
            cached_[v] = 1;
            ++raw_queries_;
        }
        return OrderKey{fn_->values[v], v};
    }

    bool queried(VertexId v) const { return v < cached_.size() && cached_[v]; }

    std::uint64_t raw_queries() const { return raw_queries_; }
    std::uint64_t modeled_cost() const { return modeled_cost_; }
    void charge_modeled(std::uint64_t cost) { modeled_cost_ += cost; }

    std::size_t domain_size() const { return cached_.size(); }
    const ValueFunction& function() const { return *fn_; }

private:
    const ValueFunction* fn_;
    std::vector<std::uint8_t> cached_;
    std::uint64_t raw_queries_ = 0;
    std::uint64_t modeled_cost_ = 0;
};

/// Witness for a local-minimum decision: all neighbor keys of the vertex.
struct LocalMinCertificate {
    VertexId vertex = kNoVertex;
    std::vector<std::pair<VertexId, OrderKey>> neighbor_keys;
};

struct LocalMinCheck {
    bool is_minimum = false;
    LocalMinCertificate certificate;
};

/// v is a local minimum iff key(v) <= key(u) for every neighbor u.
/// Queries v and all its neighbors through the oracle.
template <GraphLike G>
LocalMinCheck is_local_min(const G& g, CountingOracle& oracle, VertexId v) {
    if (!g.contains(v)) throw UsageError("vertex " + std::to_string(v) + " not in graph");
    LocalMinCheck out;
    out.certificate.vertex = v;
    OrderKey self = oracle.query(v);
    out.is_minimum = true;
    g.for_neighbors(v, [&](VertexId u) {
        OrderKey k = oracle.query(u);
        out.certificate.neighbor_keys.emplace_back(u, k);
        if (k < self) out.is_minimum = false;
    });
    return out;
}

/// Convenience wrapper on a fresh oracle; used for post-hoc verification so
/// the check never touches a run's cost ledgers.
template <GraphLike G>
bool verify_local_min(const G& g, const ValueFunction& fn, VertexId v) {
    CountingOracle clone(fn);
    return is_local_min(g, clone, v).is_minimum;
}

/// Reference solver: the vertex of globally minimal key. Always a local
/// minimum.
template <GraphLike G>
VertexId brute_force_local_min(const G& g, const ValueFunction& fn) {
    if (g.num_vertices() == 0) throw UsageError("empty graph has no local minimum");
    OrderKey best{};
    VertexId arg = kNoVertex;
    g.for_each_vertex([&](VertexId v) {
        OrderKey k{fn(v), v};
        if (arg == kNoVertex || k < best) {
            best = k;
            arg = v;
        }
    });
    return arg;
}

// ── Value-function generators ────────────────────────────────────────

/// Uniform values in [0, 1e9); reproducible for a fixed seed.
inline ValueFunction random_values(const Graph& g, std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, kStreamInstance));
    ValueFunction f;
    f.values.resize(g.num_vertices());
    for (auto& x : f.values) x = rng.next_below(1000000000ULL);
    return f;
}

/// f(v) = v on a grid: strictly increasing along rows, unique local minimum
/// at vertex 0.
inline ValueFunction row_major(const Graph& g) {
    if (!g.grid_dims()) throw UsageError("row_major requires a grid");
    ValueFunction f;
    f.values.resize(g.num_vertices());
    for (std::size_t v = 0; v < f.values.size(); ++v) f.values[v] = v;
    return f;
}

/// Manhattan distance to a chosen grid cell: single valley, unique local
/// minimum at the center.
inline ValueFunction valley(const Graph& g, std::size_t center_row, std::size_t center_col) {
    auto dims = g.grid_dims();
    if (!dims) throw UsageError("valley requires a grid");
    if (center_row >= dims->rows || center_col >= dims->cols)
        throw UsageError("valley center outside grid");
    ValueFunction f;
    f.values.resize(g.num_vertices());
    for (std::size_t r = 0; r < dims->rows; ++r)
        for (std::size_t c = 0; c < dims->cols; ++c) {
            std::size_t dr = r > center_row ? r - center_row : center_row - r;
            std::size_t dc = c > center_col ? c - center_col : center_col - c;
            f.values[r * dims->cols + c] = dr + dc;
        }
    return f;
}

/// Strictly decreasing values along a path graph, so an uncapped descent
/// from the top walks the whole path. The seed picks which endpoint is the
/// minimum.
inline ValueFunction staircase_path(const Graph& g, std::uint64_t seed) {
    std::size_t n = g.num_vertices();
    ValueFunction f;
    f.values.assign(n, 0);
    if (n == 1) return f;
    std::vector<VertexId> ends;
    for (VertexId v = 0; v < n; ++v) {
        std::size_t d = g.degree(v);
        if (d == 1)
            ends.push_back(v);
        else if (d != 2)
            throw UsageError("staircase_path requires a path graph");
    }
    if (ends.size() != 2 || g.num_edges() != n - 1 || !is_connected(g))
        throw UsageError("staircase_path requires a path graph");
    VertexId top = ends[mix_seed(seed, kStreamInstance) & 1];
    VertexId prev = kNoVertex, cur = top;
    for (std::size_t i = 0; i < n; ++i) {
        f.values[cur] = n - 1 - i;
        VertexId next = kNoVertex;
        g.for_neighbors(cur, [&](VertexId u) {
            if (u != prev) next = u;
        });
        prev = cur;
        cur = next;
    }
    return f;
}

// ── Value file format: n lines "v f(v)" ─────────────────────────────

inline void write_values(std::ostream& os, const ValueFunction& f) {
    for (std::size_t v = 0; v < f.values.size(); ++v) os << v << ' ' << f.values[v] << '\n';
}

inline void write_values_file(const std::string& path, const ValueFunction& f) {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open " + path + " for writing");
    write_values(os, f);
}

/// Reads a value file; requires exactly one value for each of the n vertices.
inline ValueFunction read_values(std::istream& is, std::size_t n) {
    ValueFunction f;
    f.values.assign(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long v = -1;
        std::uint64_t x = 0;
        if (!(ls >> v >> x) || v < 0)
            throw UsageError("value parse error at line " + std::to_string(lineno));
        if (static_cast<std::size_t>(v) >= n)
            throw UsageError("value line " + std::to_string(lineno) + ": vertex out of range");
        if (seen[static_cast<std::size_t>(v)])
            throw UsageError("value line " + std::to_string(lineno) + ": duplicate vertex");
        seen[static_cast<std::size_t>(v)] = 1;
        f.values[static_cast<std::size_t>(v)] = x;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v]) throw UsageError("value file misses vertex " + std::to_string(v));
    return f;
}

inline ValueFunction read_values_file(const std::string& path, std::size_t n) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open " + path);
    return read_values(is, n);
}

} // namespace locmin
