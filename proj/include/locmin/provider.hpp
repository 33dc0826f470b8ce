#pragma once

#include <string>

#include "locmin/common.hpp"
#include "locmin/graph.hpp"
#include "locmin/planar.hpp"
#include "locmin/separator.hpp"

namespace locmin {

/// Strategy ids: trivial | grid | centroid | planar | bfs-fallback, plus
/// "auto" for predicate-based selection. Matches the CLI and dump format.
inline bool is_separator_strategy(const std::string& s) {
    return s == "auto" || s == "trivial" || s == "grid" || s == "centroid" || s == "planar" ||
           s == "bfs-fallback";
}

namespace detail {

template <EmbeddedGraphLike G>
SeparatorReport wrap_report(const G& g, Separator sep, std::string strategy, bool guaranteed) {
    SeparatorReport r;
    r.separator = std::move(sep);
    r.strategy = std::move(strategy);
    r.size_bound = ght_size_bound(g.num_vertices(), g.genus_bound());
    r.met_bound = static_cast<double>(r.separator.size()) <= r.size_bound;
    r.guaranteed = guaranteed;
    return r;
}

} // namespace detail

/// Builds a separator with the requested strategy. "auto" routes: trivial
/// for n <= 2, grid for (sub)grids, centroid for trees, planar when a
/// genus-0 embedding exists, BFS fallback otherwise — so it is total on all
/// inputs.
template <EmbeddedGraphLike G>
SeparatorReport build_separator(const G& g, const std::string& strategy = "auto") {
    if (!is_separator_strategy(strategy)) throw UsageError("unknown separator strategy: " + strategy);
    if (strategy == "trivial") return detail::wrap_report(g, trivial_separator(g), "trivial", true);
    if (strategy == "grid") return detail::wrap_report(g, grid_separator(g), "grid", true);
    if (strategy == "centroid")
        return detail::wrap_report(g, tree_centroid_separator(g), "centroid", true);
    if (strategy == "planar") return planar_separator(g);
    if (strategy == "bfs-fallback")
        return detail::wrap_report(g, bfs_fallback_separator(g), "bfs-fallback", false);

    if (g.num_vertices() <= 2) return detail::wrap_report(g, trivial_separator(g), "trivial", true);
    if (as_grid_rect(g)) return detail::wrap_report(g, grid_separator(g), "grid", true);
    if (is_tree(g)) return detail::wrap_report(g, tree_centroid_separator(g), "centroid", true);
    if (g.has_embedding() && g.genus_bound() == 0) return planar_separator(g);
    return detail::wrap_report(g, bfs_fallback_separator(g), "bfs-fallback", false);
}

} // namespace locmin
