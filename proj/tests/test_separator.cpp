#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "locmin/generators.hpp"
#include "locmin/provider.hpp"
#include "locmin/separator.hpp"
#include "test_support.hpp"

using namespace locmin;

TEST_CASE("separator validation against the 2n/3 rule") {
    Graph p9 = make_path(9);
    REQUIRE(validate_separator(p9, std::vector<VertexId>{4}));  // parts 4 and 4
    REQUIRE_FALSE(validate_separator(p9, std::vector<VertexId>{1})); // part of size 7
    std::vector<VertexId> all(9);
    for (VertexId v = 0; v < 9; ++v) all[v] = v;
    REQUIRE(validate_separator(p9, all)); // vacuously true
    REQUIRE_THROWS_AS(validate_separator(p9, std::vector<VertexId>{42}), UsageError);
}

TEST_CASE("size bound formulas") {
    REQUIRE_THAT(ght_size_bound(100, 0), Catch::Matchers::WithinAbs(29.2843, 1e-3));
    REQUIRE_THAT(ght_size_bound(100, 1), Catch::Matchers::WithinAbs(89.2843, 1e-3));
    REQUIRE_THAT(ght_size_bound(1, 0), Catch::Matchers::WithinAbs(3.8284, 1e-3));

    REQUIRE_THAT(strong_size_bound(100, 0), Catch::Matchers::WithinAbs(88.0843, 1e-3));
    // at the n >= 3 boundary: (6 + 2*sqrt(2) - 4 + 1/sqrt(3)) * sqrt(3)
    REQUIRE_THAT(strong_size_bound(3, 0),
                 Catch::Matchers::WithinAbs(2.0 * std::sqrt(3.0) + 2.0 * std::sqrt(6.0) + 1.0, 1e-9));
    REQUIRE_THROWS_AS(strong_size_bound(2, 0), UsageError);

    // rearrangement identity: strong(n,g) - [ght(n,g) - 1 + (6n-12+4g)/sqrt(n)
    // - 6*sqrt(g*n)] equals 6*sqrt(g*n) + 1
    for (auto [n, g] : {std::pair<std::size_t, unsigned>{3, 0}, {100, 1}, {12, 2}}) {
        double lhs = strong_size_bound(n, g);
        double nd = static_cast<double>(n);
        double rhs = ght_size_bound(n, g) - 1.0 + (6.0 * nd - 12.0 + 4.0 * g) / std::sqrt(nd) -
                     6.0 * std::sqrt(g * nd);
        REQUIRE_THAT(lhs - rhs, Catch::Matchers::WithinAbs(6.0 * std::sqrt(g * nd) + 1.0, 1e-9));
        REQUIRE(lhs >= rhs);
    }

    // monotone in genus for fixed n
    for (std::size_t n : {3, 10, 100, 5000})
        for (unsigned g = 0; g < 6; ++g) {
            REQUIRE(ght_size_bound(n, g + 1) >= ght_size_bound(n, g));
            REQUIRE(strong_size_bound(n, g + 1) >= strong_size_bound(n, g));
        }
}

TEST_CASE("high degree vertices use strict integer comparison") {
    REQUIRE(high_degree_vertices(make_star(10)) == std::vector<VertexId>{0}); // 9^2 > 10
    REQUIRE(high_degree_vertices(make_grid(4, 4)).empty());                   // 4^2 = 16, not >
    REQUIRE(high_degree_vertices(make_path(5)).empty());

    // counting step: |B| * sqrt(n) <= 2|E|; with the edge bound also
    // |B| <= (6n - 12 + 4g)/sqrt(n)
    auto corpus = locmin_test::build_corpus(true);
    for (const auto& ng : corpus.graphs) {
        const Graph& g = *ng.graph;
        std::size_t n = g.num_vertices();
        auto b = high_degree_vertices(g);
        double sqrt_n = std::sqrt(static_cast<double>(n));
        REQUIRE(static_cast<double>(b.size()) * sqrt_n <=
                2.0 * static_cast<double>(g.num_edges()) + 1e-9);
        if (n >= 3 && check_edge_bound(g)) {
            double cap = (6.0 * static_cast<double>(n) - 12.0 + 4.0 * g.genus_bound()) / sqrt_n;
            REQUIRE(static_cast<double>(b.size()) <= cap + 1e-9);
        }
    }
}

TEST_CASE("strongify augments with high-degree vertices") {
    Graph grid = make_grid(4, 4);
    Separator column = grid_separator(grid);
    StrongSeparator s = strongify(grid, column);
    REQUIRE(s.high_degree.empty());
    REQUIRE(s.combined.vertices == column.vertices);

    Graph star = make_star(10);
    Separator hub = make_separator(star, {0});
    StrongSeparator shub = strongify(star, hub);
    REQUIRE(shub.combined.vertices == std::vector<VertexId>{0}); // B is a subset of C'

    Graph tg = make_triangulated_grid(8, 8, 5);
    SeparatorReport rep = build_separator(tg);
    StrongSeparator st = strongify(tg, rep.separator);
    std::set<VertexId> cut(st.combined.vertices.begin(), st.combined.vertices.end());
    std::vector<VertexId> rest;
    tg.for_each_vertex([&](VertexId v) {
        if (!cut.count(v)) rest.push_back(v);
    });
    auto residual = induced_subgraph(tg, rest);
    REQUIRE(max_degree(residual) <= 8); // sqrt(64)

    Separator bogus = make_separator(make_path(9), {0});
    REQUIRE_THROWS_AS(strongify(make_path(9), bogus), UsageError);
}

TEST_CASE("grid separator cuts the longer dimension") {
    Graph g = make_grid(4, 4);
    Separator s = grid_separator(g);
    REQUIRE(s.size() == 4);
    std::multiset<std::size_t> sizes(s.component_sizes.begin(), s.component_sizes.end());
    REQUIRE(sizes == std::multiset<std::size_t>{4, 8});
    REQUIRE(validate_separator(g, s));

    Separator p = grid_separator(make_grid(1, 9));
    REQUIRE(p.vertices == std::vector<VertexId>{4});

    Separator q = grid_separator(make_grid(2, 2));
    REQUIRE(q.size() == 2);
    for (std::size_t c : q.component_sizes) REQUIRE(c <= 2);

    REQUIRE_THROWS_AS(grid_separator(make_star(5)), UsageError);

    // sub-rectangle views are still grids; ragged views are not
    SubgraphView rect = induced_subgraph(g, {0, 1, 4, 5, 8, 9});
    REQUIRE(as_grid_rect(rect));
    REQUIRE(validate_separator(rect, grid_separator(rect)));
    SubgraphView ragged = induced_subgraph(g, {0, 1, 4});
    REQUIRE_FALSE(as_grid_rect(ragged));
}

TEST_CASE("tree centroid separator") {
    REQUIRE(tree_centroid_separator(make_path(9)).vertices == std::vector<VertexId>{4});
    REQUIRE(tree_centroid_separator(make_star(10)).vertices == std::vector<VertexId>{0});

    Graph t = make_random_tree(50, 12);
    Separator s = tree_centroid_separator(t);
    REQUIRE(s.size() == 1);
    REQUIRE(validate_separator(t, s));
    for (std::size_t c : s.component_sizes) REQUIRE(c <= 25);

    REQUIRE_THROWS_AS(tree_centroid_separator(make_grid(3, 3)), UsageError);
}

TEST_CASE("trivial separator") {
    REQUIRE(trivial_separator(make_path(1)).vertices == std::vector<VertexId>{0});
    Separator s = trivial_separator(make_path(2));
    REQUIRE(s.vertices == std::vector<VertexId>{0, 1});
    REQUIRE(s.component_sizes.empty());
    REQUIRE_THROWS_AS(trivial_separator(make_path(3)), UsageError);
}

TEST_CASE("bfs fallback is valid on arbitrary connected graphs") {
    Separator k9 = bfs_fallback_separator(make_complete(9));
    REQUIRE(validate_separator(make_complete(9), k9));
    REQUIRE(k9.size() == 3); // ceil(9/3) vertices suffice after pruning

    // random connected graphs: tree plus extra edges
    SplitMix64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 2 + rng.next_below(999);
        Graph tree = make_random_tree(n, rep);
        std::vector<Graph::Edge> edges;
        tree.for_each_edge([&](VertexId u, VertexId v) { edges.emplace_back(u, v); });
        std::set<std::pair<VertexId, VertexId>> have(edges.begin(), edges.end());
        std::size_t extra = rng.next_below(n);
        for (std::size_t i = 0; i < extra; ++i) {
            auto u = static_cast<VertexId>(rng.next_below(n));
            auto v = static_cast<VertexId>(rng.next_below(n));
            if (u == v) continue;
            auto e = std::minmax(u, v);
            if (have.insert({e.first, e.second}).second)
                edges.emplace_back(e.first, e.second);
        }
        Graph g(n, edges, 10); // arbitrary genus label; fallback ignores it
        Separator s = bfs_fallback_separator(g);
        REQUIRE(validate_separator(g, s));
    }
}

TEST_CASE("provider auto-selection and corpus-wide validity") {
    REQUIRE(build_separator(make_grid(8, 8)).strategy == "grid");
    REQUIRE(build_separator(make_random_tree(40, 2)).strategy == "centroid");
    REQUIRE(build_separator(make_triangulated_grid(6, 6, 1)).strategy == "planar");
    REQUIRE(build_separator(make_complete(9)).strategy == "bfs-fallback");
    REQUIRE(build_separator(make_path(2)).strategy == "trivial"); // routing rule for P2
    REQUIRE_THROWS_AS(build_separator(make_grid(4, 4), "nonsense"), UsageError);

    auto corpus = locmin_test::build_corpus(true);
    for (const auto& ng : corpus.graphs) {
        const Graph& g = *ng.graph;
        SeparatorReport rep = build_separator(g);
        REQUIRE(validate_separator(g, rep.separator));
        // certificate matches a recomputation
        auto again = make_separator(g, rep.separator.vertices);
        REQUIRE(again.component_sizes == rep.separator.component_sizes);
        // guaranteed providers stay under the Theorem-1 evaluation
        if (rep.guaranteed && g.num_vertices() >= 3)
            REQUIRE(static_cast<double>(rep.separator.size()) <=
                    ght_size_bound(g.num_vertices(), 0));
        // strong separators leave a low-degree residual
        if (g.num_vertices() >= 3) {
            StrongSeparator strong = strongify(g, rep.separator);
            std::set<VertexId> cut(strong.combined.vertices.begin(),
                                   strong.combined.vertices.end());
            std::vector<VertexId> rest;
            g.for_each_vertex([&](VertexId v) {
                if (!cut.count(v)) rest.push_back(v);
            });
            auto residual = induced_subgraph(g, rest);
            std::size_t d = max_degree(residual);
            REQUIRE(d * d <= g.num_vertices());
        }
    }
}
