#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locmin/common.hpp"

namespace locmin {

/// Dimensions of a rectangular grid family member (row-major vertex ids).
struct GridDims {
    std::size_t rows = 0;
    std::size_t cols = 0;
};

/// Immutable undirected simple graph. Adjacency lists are sorted by vertex
/// id, so every iteration order in the project is deterministic. The genus
/// bound is a declared label, never computed. An optional rotation system
/// (cyclic neighbor order per vertex) encodes a combinatorial embedding.
class Graph {
public:
    using Edge = std::pair<VertexId, VertexId>;

    Graph(std::size_t n, const std::vector<Edge>& edges, unsigned genus_bound = 0,
          std::vector<std::vector<VertexId>> rotations = {},
          std::optional<GridDims> grid = std::nullopt)
        : n_(n), genus_bound_(genus_bound), grid_(grid) {
        build_adjacency(edges);
        if (!rotations.empty()) set_rotations(std::move(rotations));
    }

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return adj_.size() / 2; }
    unsigned genus_bound() const { return genus_bound_; }
    bool contains(VertexId v) const { return v < n_; }

    /// All vertex ids are < id_bound(); lets algorithms size flat scratch arrays.
    std::size_t id_bound() const { return n_; }

    /// Neighbors of v in ascending id order.
    std::span<const VertexId> neighbors(VertexId v) const {
        check_vertex(v);
        return {adj_.data() + off_[v], off_[v + 1] - off_[v]};
    }

    std::size_t degree(VertexId v) const {
        check_vertex(v);
        return off_[v + 1] - off_[v];
    }

    template <typename F>
    void for_each_vertex(F&& f) const {
        for (VertexId v = 0; v < n_; ++v) f(v);
    }

    template <typename F>
    void for_neighbors(VertexId v, F&& f) const {
        for (std::size_t i = off_[v]; i < off_[v + 1]; ++i) f(adj_[i]);
    }

    /// Visits each edge once as (u, v) with u < v, ascending.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (VertexId u = 0; u < n_; ++u)
            for (std::size_t i = off_[u]; i < off_[u + 1]; ++i)
                if (u < adj_[i]) f(u, adj_[i]);
    }

    bool has_embedding() const { return has_embedding_; }

    /// Cyclic neighbor order around v. Only valid when has_embedding().
    std::span<const VertexId> rotation(VertexId v) const {
        check_vertex(v);
        if (!has_embedding()) throw UsageError("graph has no embedding");
        return {rot_.data() + off_[v], off_[v + 1] - off_[v]};
    }

    template <typename F>
    void for_rotation(VertexId v, F&& f) const {
        for (std::size_t i = off_[v]; i < off_[v + 1]; ++i) f(rot_[i]);
    }

    /// Set when the graph was produced by the plain-grid generator.
    const std::optional<GridDims>& grid_dims() const { return grid_; }

private:
    void check_vertex(VertexId v) const {
        if (v >= n_) throw UsageError("vertex " + std::to_string(v) + " out of range [0, " +
                                      std::to_string(n_) + ")");
    }

    void build_adjacency(const std::vector<Edge>& edges) {
        std::vector<std::size_t> deg(n_, 0);
        for (const auto& [u, v] : edges) {
            if (u >= n_ || v >= n_)
                throw UsageError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                 std::to_string(v) + ")");
            if (u == v) throw UsageError("self-loop at vertex " + std::to_string(u));
            ++deg[u];
            ++deg[v];
        }
        off_.assign(n_ + 1, 0);
        for (std::size_t v = 0; v < n_; ++v) off_[v + 1] = off_[v] + deg[v];
        adj_.resize(off_[n_]);
        std::vector<std::size_t> cursor(off_.begin(), off_.end() - 1);
        for (const auto& [u, v] : edges) {
            adj_[cursor[u]++] = v;
            adj_[cursor[v]++] = u;
        }
        for (VertexId v = 0; v < n_; ++v) {
            auto first = adj_.begin() + static_cast<std::ptrdiff_t>(off_[v]);
            auto last = adj_.begin() + static_cast<std::ptrdiff_t>(off_[v + 1]);
            std::sort(first, last);
            if (std::adjacent_find(first, last) != last)
                throw UsageError("duplicate edge at vertex " + std::to_string(v));
        }
    }

    void set_rotations(std::vector<std::vector<VertexId>> rotations) {
        if (rotations.size() != n_)
            throw UsageError("rotation system must cover every vertex");
        has_embedding_ = true;
        rot_.resize(adj_.size());
        for (VertexId v = 0; v < n_; ++v) {
            const auto& r = rotations[v];
            if (r.size() != degree(v))
                throw UsageError("rotation of vertex " + std::to_string(v) +
                                 " does not match its degree");
            std::vector<VertexId> sorted(r);
            std::sort(sorted.begin(), sorted.end());
            if (!std::equal(sorted.begin(), sorted.end(), adj_.begin() + static_cast<std::ptrdiff_t>(off_[v])))
                throw UsageError("rotation of vertex " + std::to_string(v) +
                                 " is not a permutation of its neighbors");
            std::copy(r.begin(), r.end(), rot_.begin() + static_cast<std::ptrdiff_t>(off_[v]));
        }
    }

    std::size_t n_;
    unsigned genus_bound_;
    std::optional<GridDims> grid_;
    std::vector<std::size_t> off_;
    std::vector<VertexId> adj_;
    std::vector<VertexId> rot_;
    bool has_embedding_ = false;
};

/// Non-owning view of an induced subgraph. Vertices keep their parent ids;
/// neighbor queries filter the parent adjacency by membership. Views of
/// views flatten onto the root graph, so Algorithm-1 style recursion nests
/// without chained indirection.
class SubgraphView {
public:
    SubgraphView(const Graph& root, std::vector<VertexId> vertices)
        : root_(&root), vertices_(std::move(vertices)), member_(root.num_vertices(), 0) {
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        for (VertexId v : vertices_) {
            if (v >= root.num_vertices())
                throw UsageError("view vertex " + std::to_string(v) + " out of range");
            member_[v] = 1;
        }
    }

    const Graph& root() const { return *root_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t id_bound() const { return member_.size(); }
    unsigned genus_bound() const { return root_->genus_bound(); }
    bool has_embedding() const { return root_->has_embedding(); }

    /// Sorted parent ids of the view's vertex set.
    const std::vector<VertexId>& vertices() const { return vertices_; }

    bool contains(VertexId v) const { return v < member_.size() && member_[v]; }

    template <typename F>
    void for_each_vertex(F&& f) const {
        for (VertexId v : vertices_) f(v);
    }

    template <typename F>
    void for_neighbors(VertexId v, F&& f) const {
        root_->for_neighbors(v, [&](VertexId u) {
            if (member_[u]) f(u);
        });
    }

    /// Rotation of v restricted to the view; cyclic order is preserved.
    template <typename F>
    void for_rotation(VertexId v, F&& f) const {
        root_->for_rotation(v, [&](VertexId u) {
            if (member_[u]) f(u);
        });
    }

    std::vector<VertexId> neighbors(VertexId v) const {
        if (!contains(v)) throw UsageError("vertex " + std::to_string(v) + " not in view");
        std::vector<VertexId> out;
        for_neighbors(v, [&](VertexId u) { out.push_back(u); });
        return out;
    }

    std::size_t degree(VertexId v) const {
        std::size_t d = 0;
        for_neighbors(v, [&](VertexId) { ++d; });
        return d;
    }

private:
    const Graph* root_;
    std::vector<VertexId> vertices_;
    std::vector<std::uint8_t> member_;
};

template <typename G>
concept GraphLike = requires(const G& g, VertexId v) {
    { g.num_vertices() } -> std::convertible_to<std::size_t>;
    { g.id_bound() } -> std::convertible_to<std::size_t>;
    { g.contains(v) } -> std::convertible_to<bool>;
    { g.degree(v) } -> std::convertible_to<std::size_t>;
    { g.genus_bound() } -> std::convertible_to<unsigned>;
    g.for_each_vertex([](VertexId) {});
    g.for_neighbors(v, [](VertexId) {});
};

/// Neighbors of v as a sorted vector (uniform over Graph and views).
template <GraphLike G>
std::vector<VertexId> neighbor_list(const G& g, VertexId v) {
    if (!g.contains(v)) throw UsageError("vertex " + std::to_string(v) + " out of range");
    std::vector<VertexId> out;
    g.for_neighbors(v, [&](VertexId u) { out.push_back(u); });
    return out;
}

inline SubgraphView induced_subgraph(const Graph& g, std::vector<VertexId> s) {
    return SubgraphView(g, std::move(s));
}

/// View of a view: flattens to the root; s must be a subset of the view.
inline SubgraphView induced_subgraph(const SubgraphView& g, std::vector<VertexId> s) {
    for (VertexId v : s)
        if (!g.contains(v)) throw UsageError("vertex " + std::to_string(v) + " not in parent view");
    return SubgraphView(g.root(), std::move(s));
}

/// Connected components as a partition of the vertex set. Components are
/// ordered by their smallest vertex; vertices within a component ascend.
template <GraphLike G>
std::vector<std::vector<VertexId>> connected_components(const G& g) {
    std::vector<std::vector<VertexId>> comps;
    if (g.num_vertices() == 0) return comps;
    std::vector<std::uint8_t> seen(g.id_bound(), 0);
    g.for_each_vertex([&](VertexId start) {
        if (seen[start]) return;
        std::vector<VertexId> comp;
        std::vector<VertexId> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            g.for_neighbors(v, [&](VertexId u) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    });
    return comps;
}

template <GraphLike G>
bool is_connected(const G& g) {
    return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

template <GraphLike G>
std::size_t max_degree(const G& g) {
    std::size_t d = 0;
    g.for_each_vertex([&](VertexId v) { d = std::max(d, g.degree(v)); });
    return d;
}

/// Edge-count sanity gate for a declared genus bound: |E| <= 3n - 6 + 2g.
/// Stated for n >= 3.
inline bool check_edge_bound(const Graph& g) {
    if (g.num_vertices() < 3) throw UsageError("edge bound is stated for n >= 3");
    std::uint64_t limit = 3 * static_cast<std::uint64_t>(g.num_vertices()) - 6 +
                          2 * static_cast<std::uint64_t>(g.genus_bound());
    return g.num_edges() <= limit;
}

} // namespace locmin
