#pragma once

#include <cstddef>
#include <vector>

#include "locmin/common.hpp"
#include "locmin/graph.hpp"

namespace locmin {

namespace detail {

// Angular neighbor order used for grid rotation systems: clockwise starting
// north. Filtering this fixed order to the edges that exist yields a
// consistent combinatorial embedding for plain and triangulated grids.
inline std::vector<VertexId> grid_rotation(std::size_t rows, std::size_t cols, std::size_t r,
                                           std::size_t c,
                                           const std::vector<std::uint8_t>& diag_main,
                                           const std::vector<std::uint8_t>& diag_anti,
                                           bool with_diagonals) {
    auto id = [&](std::size_t rr, std::size_t cc) {
        return static_cast<VertexId>(rr * cols + cc);
    };
    auto cell = [&](std::size_t rr, std::size_t cc) { return rr * (cols - 1) + cc; };
    std::vector<VertexId> rot;
    // N
    if (r > 0) rot.push_back(id(r - 1, c));
    // NE: anti diagonal of cell (r-1, c)
    if (with_diagonals && r > 0 && c + 1 < cols && diag_anti[cell(r - 1, c)])
        rot.push_back(id(r - 1, c + 1));
    // E
    if (c + 1 < cols) rot.push_back(id(r, c + 1));
    // SE: main diagonal of cell (r, c)
    if (with_diagonals && r + 1 < rows && c + 1 < cols && diag_main[cell(r, c)])
        rot.push_back(id(r + 1, c + 1));
    // S
    if (r + 1 < rows) rot.push_back(id(r + 1, c));
    // SW: anti diagonal of cell (r, c-1)
    if (with_diagonals && r + 1 < rows && c > 0 && diag_anti[cell(r, c - 1)])
        rot.push_back(id(r + 1, c - 1));
    // W
    if (c > 0) rot.push_back(id(r, c - 1));
    // NW: main diagonal of cell (r-1, c-1)
    if (with_diagonals && r > 0 && c > 0 && diag_main[cell(r - 1, c - 1)])
        rot.push_back(id(r - 1, c - 1));
    return rot;
}

} // namespace detail

/// rows x cols grid, genus 0, with rotation system and grid dimension tag.
inline Graph make_grid(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw UsageError("grid dimensions must be positive");
    std::vector<Graph::Edge> edges;
    auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    std::vector<std::uint8_t> none;
    std::vector<std::vector<VertexId>> rot(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            rot[id(r, c)] = detail::grid_rotation(rows, cols, r, c, none, none, false);
    return Graph(rows * cols, edges, 0, std::move(rot), GridDims{rows, cols});
}

/// Grid plus one seed-chosen diagonal per unit cell; genus 0, embedded.
/// Not tagged as a plain grid: it is its own family.
inline Graph make_triangulated_grid(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    if (rows == 0 || cols == 0) throw UsageError("grid dimensions must be positive");
    auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
    std::size_t cells = (rows - 1) * (cols - 1);
    std::vector<std::uint8_t> diag_main(cells, 0), diag_anti(cells, 0);
    SplitMix64 rng(mix_seed(seed, kStreamInstance));
    for (std::size_t i = 0; i < cells; ++i) {
        if (rng.next() & 1)
            diag_main[i] = 1;
        else
            diag_anti[i] = 1;
    }
    std::vector<Graph::Edge> edges;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            if (r + 1 < rows && c + 1 < cols) {
                std::size_t cl = r * (cols - 1) + c;
                if (diag_main[cl])
                    edges.emplace_back(id(r, c), id(r + 1, c + 1));
                else
                    edges.emplace_back(id(r + 1, c), id(r, c + 1));
            }
        }
    std::vector<std::vector<VertexId>> rot(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            rot[id(r, c)] = detail::grid_rotation(rows, cols, r, c, diag_main, diag_anti, true);
    return Graph(rows * cols, edges, 0, std::move(rot));
}

/// Path 0-1-...-(n-1); genus 0, embedded (any rotation of a tree is planar).
inline Graph make_path(std::size_t n) {
    if (n == 0) throw UsageError("path size must be positive");
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    std::vector<std::vector<VertexId>> rot(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) rot[i].push_back(static_cast<VertexId>(i - 1));
        if (i + 1 < n) rot[i].push_back(static_cast<VertexId>(i + 1));
    }
    return Graph(n, edges, 0, std::move(rot));
}

/// Star on n vertices: hub 0, leaves 1..n-1. Genus 0, embedded.
inline Graph make_star(std::size_t n) {
    if (n == 0) throw UsageError("star size must be positive");
    std::vector<Graph::Edge> edges;
    std::vector<std::vector<VertexId>> rot(n);
    for (std::size_t i = 1; i < n; ++i) {
        edges.emplace_back(0, static_cast<VertexId>(i));
        rot[0].push_back(static_cast<VertexId>(i));
        rot[i].push_back(0);
    }
    return Graph(n, edges, 0, std::move(rot));
}

/// Uniform random attachment tree: parent(i) drawn from [0, i). Genus 0,
/// embedded. Reproducible for a fixed seed.
inline Graph make_random_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw UsageError("tree size must be positive");
    SplitMix64 rng(mix_seed(seed, kStreamInstance));
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
        auto p = static_cast<VertexId>(rng.next_below(i));
        edges.emplace_back(p, static_cast<VertexId>(i));
    }
    Graph plain(n, edges, 0);
    std::vector<std::vector<VertexId>> rot(n);
    for (VertexId v = 0; v < n; ++v) {
        auto nb = plain.neighbors(v);
        rot[v].assign(nb.begin(), nb.end());
    }
    return Graph(n, edges, 0, std::move(rot));
}

/// Genus bound for the complete graph K_n (Ringel-Youngs), n >= 3.
inline unsigned complete_genus_bound(std::size_t n) {
    if (n < 3) return 0;
    std::uint64_t num = (n - 3) * (n - 4);
    return static_cast<unsigned>((num + 11) / 12);
}

/// Complete graph on n vertices with the Ringel-Youngs genus label.
/// No embedding is attached.
inline Graph make_complete(std::size_t n) {
    if (n == 0) throw UsageError("complete graph size must be positive");
    std::vector<Graph::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return Graph(n, edges, complete_genus_bound(n));
}

/// Structural grid detection: recovers (rows, cols) when the graph is a
/// row-major rectangular grid. Lets file-loaded grids use the grid provider.
inline std::optional<GridDims> detect_grid_dims(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n == 0) return std::nullopt;
    if (n == 1) return g.num_edges() == 0 ? std::optional<GridDims>(GridDims{1, 1}) : std::nullopt;
    std::size_t cols = 0;
    auto nb0 = g.neighbors(0);
    if (nb0.empty()) return std::nullopt;
    if (nb0.size() == 1) {
        // one row or one column; both are the 1 x n path
        cols = (nb0[0] == 1) ? n : 0;
    } else if (nb0.size() == 2 && nb0[0] == 1 && nb0[1] > 1) {
        cols = nb0[1];
    }
    if (cols == 0 || n % cols != 0) return std::nullopt;
    std::size_t rows = n / cols;
    std::size_t want = 2 * rows * cols - rows - cols;
    if (g.num_edges() != want) return std::nullopt;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            VertexId v = static_cast<VertexId>(r * cols + c);
            std::size_t expect = (r > 0) + (r + 1 < rows) + (c > 0) + (c + 1 < cols);
            if (g.degree(v) != expect) return std::nullopt;
            bool ok = true;
            g.for_neighbors(v, [&](VertexId u) {
                std::size_t ur = u / cols, uc = u % cols;
                std::size_t dr = ur > r ? ur - r : r - ur;
                std::size_t dc = uc > c ? uc - c : c - uc;
                if (dr + dc != 1) ok = false;
            });
            if (!ok) return std::nullopt;
        }
    return GridDims{rows, cols};
}

} // namespace locmin
