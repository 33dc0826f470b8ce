#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "locmin/common.hpp"
#include "locmin/graph.hpp"

namespace locmin {

/// Vertex separator: removing `vertices` leaves no connected component with
/// more than 2n/3 vertices. The certificate records the component sizes that
/// were observed when the separator was built.
struct Separator {
    std::vector<VertexId> vertices;
    std::vector<std::size_t> component_sizes;

    std::size_t size() const { return vertices.size(); }
};

/// Provider output: the separator plus the size-bound accounting that the
/// bench reports. `size_bound` is the Theorem-1 evaluation for the separated
/// graph; `guaranteed` is the provider's declared contract, `met_bound` the
/// per-instance outcome.
struct SeparatorReport {
    Separator separator;
    std::string strategy;
    double size_bound = 0.0;
    bool met_bound = true;
    bool guaranteed = false;
    // planar-construction diagnostics
    bool used_cycle_phase = false;
    bool used_fallback = false;
};

/// Separator size bound 6*sqrt(g*n) + 2*sqrt(2n) + 1 for genus-g graphs.
inline double ght_size_bound(std::size_t n, unsigned genus) {
    double nd = static_cast<double>(n);
    double gd = static_cast<double>(genus);
    return 6.0 * std::sqrt(gd * nd) + 2.0 * std::sqrt(2.0 * nd) + 1.0;
}

/// Strong-separator size bound
/// (6 + 2*sqrt(2) - 12/n + 6*sqrt(g) + 4g/n + 1/sqrt(n)) * sqrt(n), n >= 3.
inline double strong_size_bound(std::size_t n, unsigned genus) {
    if (n < 3) throw UsageError("strong separator bound assumes n >= 3");
    double nd = static_cast<double>(n);
    double gd = static_cast<double>(genus);
    double factor = 6.0 + 2.0 * std::sqrt(2.0) - 12.0 / nd + 6.0 * std::sqrt(gd) + 4.0 * gd / nd +
                    1.0 / std::sqrt(nd);
    return factor * std::sqrt(nd);
}

namespace detail {

/// Sizes of the connected components of V(g) \ removed, in discovery order
/// (ordered by smallest contained vertex id).
template <GraphLike G>
std::vector<std::size_t> component_sizes_after_removal(const G& g,
                                                       const std::vector<std::uint8_t>& removed) {
    std::vector<std::size_t> sizes;
    std::vector<std::uint8_t> seen(g.id_bound(), 0);
    std::vector<VertexId> stack;
    g.for_each_vertex([&](VertexId start) {
        if (seen[start] || removed[start]) return;
        std::size_t count = 0;
        stack.assign(1, start);
        seen[start] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++count;
            g.for_neighbors(v, [&](VertexId u) {
                if (!seen[u] && !removed[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            });
        }
        sizes.push_back(count);
    });
    return sizes;
}

template <GraphLike G>
std::vector<std::uint8_t> removal_mask(const G& g, const std::vector<VertexId>& removed) {
    std::vector<std::uint8_t> mask(g.id_bound(), 0);
    for (VertexId v : removed) {
        if (!g.contains(v))
            throw UsageError("separator vertex " + std::to_string(v) + " not in graph");
        mask[v] = 1;
    }
    return mask;
}

} // namespace detail

/// Builds a Separator from a vertex set, computing the certificate.
template <GraphLike G>
Separator make_separator(const G& g, std::vector<VertexId> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    auto mask = detail::removal_mask(g, vertices);
    Separator s;
    s.vertices = std::move(vertices);
    s.component_sizes = detail::component_sizes_after_removal(g, mask);
    return s;
}

/// True iff every component of V \ C has at most floor(2n/3) vertices.
template <GraphLike G>
bool validate_separator(const G& g, const std::vector<VertexId>& c) {
    std::size_t limit = 2 * g.num_vertices() / 3;
    auto mask = detail::removal_mask(g, c);
    for (std::size_t s : detail::component_sizes_after_removal(g, mask))
        if (s > limit) return false;
    return true;
}

template <GraphLike G>
bool validate_separator(const G& g, const Separator& s) {
    return validate_separator(g, s.vertices);
}

/// B = { v : deg(v) > sqrt(n) }, compared in exact integer arithmetic.
template <GraphLike G>
std::vector<VertexId> high_degree_vertices(const G& g) {
    std::uint64_t n = g.num_vertices();
    std::vector<VertexId> b;
    g.for_each_vertex([&](VertexId v) {
        std::uint64_t d = g.degree(v);
        if (d * d > n) b.push_back(v);
    });
    return b;
}

/// Separator augmented with all high-degree vertices: the residual graph on
/// V \ (C' u B) has max degree at most sqrt(n).
struct StrongSeparator {
    Separator base;
    std::vector<VertexId> high_degree;
    Separator combined;
};

template <GraphLike G>
StrongSeparator strongify(const G& g, const Separator& base) {
    if (!validate_separator(g, base))
        throw UsageError("strongify requires a valid base separator");
    StrongSeparator out;
    out.base = base;
    out.high_degree = high_degree_vertices(g);
    std::vector<VertexId> joined = base.vertices;
    joined.insert(joined.end(), out.high_degree.begin(), out.high_degree.end());
    out.combined = make_separator(g, std::move(joined));
    return out;
}

// ── Constructive providers ───────────────────────────────────────────

/// Rectangular block of a grid graph, in the grid's row-major id space.
struct GridRect {
    std::size_t r0 = 0, c0 = 0, rows = 0, cols = 0;
    std::size_t root_cols = 0;

    VertexId id(std::size_t r, std::size_t c) const {
        return static_cast<VertexId>((r0 + r) * root_cols + (c0 + c));
    }
};

inline std::optional<GridRect> as_grid_rect(const Graph& g) {
    if (!g.grid_dims()) return std::nullopt;
    return GridRect{0, 0, g.grid_dims()->rows, g.grid_dims()->cols, g.grid_dims()->cols};
}

/// A view over a tagged grid is itself a grid exactly when its vertex set
/// fills a rectangular block; induced edges are then automatic.
inline std::optional<GridRect> as_grid_rect(const SubgraphView& g) {
    auto dims = g.root().grid_dims();
    if (!dims || g.num_vertices() == 0) return std::nullopt;
    std::size_t cols = dims->cols;
    std::size_t rmin = SIZE_MAX, rmax = 0, cmin = SIZE_MAX, cmax = 0;
    for (VertexId v : g.vertices()) {
        std::size_t r = v / cols, c = v % cols;
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    std::size_t rows = rmax - rmin + 1, bcols = cmax - cmin + 1;
    if (rows * bcols != g.num_vertices()) return std::nullopt;
    return GridRect{rmin, cmin, rows, bcols, cols};
}

/// Middle row/column cut of the longer grid dimension; size min(rows, cols),
/// both sides have at most n/2 vertices.
template <GraphLike G>
Separator grid_separator(const G& g) {
    auto rect = as_grid_rect(g);
    if (!rect) throw UsageError("grid separator requires a grid graph");
    std::vector<VertexId> cut;
    if (rect->cols >= rect->rows) {
        std::size_t c = (rect->cols - 1) / 2;
        for (std::size_t r = 0; r < rect->rows; ++r) cut.push_back(rect->id(r, c));
    } else {
        std::size_t r = (rect->rows - 1) / 2;
        for (std::size_t c = 0; c < rect->cols; ++c) cut.push_back(rect->id(r, c));
    }
    return make_separator(g, std::move(cut));
}

namespace detail {

template <GraphLike G>
std::size_t count_edges(const G& g) {
    std::size_t twice = 0;
    g.for_each_vertex([&](VertexId v) { twice += g.degree(v); });
    return twice / 2;
}

} // namespace detail

template <GraphLike G>
bool is_tree(const G& g) {
    if (g.num_vertices() == 0) return false;
    return detail::count_edges(g) == g.num_vertices() - 1 && is_connected(g);
}

/// Single centroid vertex; every remaining component has at most n/2
/// vertices.
template <GraphLike G>
Separator tree_centroid_separator(const G& g) {
    if (!is_tree(g)) throw UsageError("centroid separator requires a tree");
    std::size_t n = g.num_vertices();

    // BFS order + parents, then subtree sizes bottom-up.
    VertexId root = kNoVertex;
    g.for_each_vertex([&](VertexId v) {
        if (root == kNoVertex) root = v;
    });
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<VertexId> parent(g.id_bound(), kNoVertex);
    std::vector<std::uint8_t> seen(g.id_bound(), 0);
    seen[root] = 1;
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head) {
        VertexId v = order[head];
        g.for_neighbors(v, [&](VertexId u) {
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                order.push_back(u);
            }
        });
    }
    std::vector<std::size_t> subtree(g.id_bound(), 1);
    for (std::size_t i = order.size(); i-- > 1;) {
        VertexId v = order[i];
        subtree[parent[v]] += subtree[v];
    }

    VertexId centroid = root;
    for (;;) {
        VertexId heavy_child = kNoVertex;
        std::size_t heavy_size = 0;
        g.for_neighbors(centroid, [&](VertexId u) {
            if (parent[u] == centroid && subtree[u] > heavy_size) {
                heavy_size = subtree[u];
                heavy_child = u;
            }
        });
        if (heavy_child == kNoVertex || heavy_size * 2 <= n) break;
        centroid = heavy_child;
    }
    return make_separator(g, {centroid});
}

/// All vertices; only defined for graphs with at most 2 vertices.
template <GraphLike G>
Separator trivial_separator(const G& g) {
    if (g.num_vertices() > 2) throw UsageError("trivial separator requires n <= 2");
    std::vector<VertexId> all;
    g.for_each_vertex([&](VertexId v) { all.push_back(v); });
    return make_separator(g, std::move(all));
}

/// Balanced BFS level cut with greedy augmentation and a pruning pass.
/// Valid on every graph; carries no size guarantee.
template <GraphLike G>
Separator bfs_fallback_separator(const G& g) {
    std::size_t n = g.num_vertices();
    std::size_t limit = 2 * n / 3;
    std::vector<std::uint8_t> removed(g.id_bound(), 0);
    std::vector<VertexId> cut;

    auto largest_component = [&]() -> std::vector<VertexId> {
        std::vector<VertexId> best;
        std::vector<std::uint8_t> seen(g.id_bound(), 0);
        std::vector<VertexId> stack;
        g.for_each_vertex([&](VertexId start) {
            if (seen[start] || removed[start]) return;
            std::vector<VertexId> comp;
            stack.assign(1, start);
            seen[start] = 1;
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                g.for_neighbors(v, [&](VertexId u) {
                    if (!seen[u] && !removed[u]) {
                        seen[u] = 1;
                        stack.push_back(u);
                    }
                });
            }
            if (comp.size() > best.size()) best = std::move(comp);
        });
        return best;
    };

    bool tried_level_cut = false;
    for (;;) {
        std::vector<VertexId> big = largest_component();
        if (big.size() <= limit) break;
        if (!tried_level_cut) {
            tried_level_cut = true;
            // BFS layering of the oversized component from its smallest vertex.
            std::sort(big.begin(), big.end());
            std::vector<std::size_t> level(g.id_bound(), SIZE_MAX);
            std::vector<VertexId> order{big.front()};
            level[big.front()] = 0;
            std::size_t max_level = 0;
            for (std::size_t head = 0; head < order.size(); ++head) {
                VertexId v = order[head];
                g.for_neighbors(v, [&](VertexId u) {
                    if (!removed[u] && level[u] == SIZE_MAX) {
                        level[u] = level[v] + 1;
                        max_level = std::max(max_level, level[u]);
                        order.push_back(u);
                    }
                });
            }
            // Pick the level whose removal best balances this component.
            std::size_t best_level = 0, best_worst = SIZE_MAX;
            for (std::size_t cand = 0; cand <= max_level; ++cand) {
                for (VertexId v : order)
                    if (level[v] == cand) removed[v] = 1;
                std::size_t worst = 0;
                for (std::size_t s : detail::component_sizes_after_removal(g, removed))
                    worst = std::max(worst, s);
                for (VertexId v : order)
                    if (level[v] == cand) removed[v] = 0;
                if (worst < best_worst) {
                    best_worst = worst;
                    best_level = cand;
                }
            }
            for (VertexId v : order)
                if (level[v] == best_level) {
                    removed[v] = 1;
                    cut.push_back(v);
                }
            continue;
        }
        // Greedy: peel the highest-degree vertex of the oversized component.
        VertexId pick = kNoVertex;
        std::size_t pick_deg = 0;
        std::sort(big.begin(), big.end());
        for (VertexId v : big) {
            std::size_t d = 0;
            g.for_neighbors(v, [&](VertexId u) {
                if (!removed[u]) ++d;
            });
            if (pick == kNoVertex || d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        removed[pick] = 1;
        cut.push_back(pick);
    }

    // Prune: drop cut vertices that are not needed for validity.
    std::sort(cut.begin(), cut.end());
    for (std::size_t i = cut.size(); i-- > 0;) {
        removed[cut[i]] = 0;
        std::size_t worst = 0;
        for (std::size_t s : detail::component_sizes_after_removal(g, removed))
            worst = std::max(worst, s);
        if (worst > limit) {
            removed[cut[i]] = 1;
        } else {
            cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    return make_separator(g, std::move(cut));
}

} // namespace locmin
