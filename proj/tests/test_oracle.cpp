#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "locmin/generators.hpp"
#include "locmin/oracle.hpp"
#include "test_support.hpp"

using namespace locmin;
using locmin_test::MatrixGraph;

TEST_CASE("query memoization counts distinct vertices once") {
    ValueFunction f{{5, 9, 7}};
    CountingOracle o(f);
    REQUIRE(o.raw_queries() == 0);
    o.query(1);
    o.query(1);
    REQUIRE(o.raw_queries() == 1);
    o.query(0);
    o.query(1);
    o.query(2);
    REQUIRE(o.raw_queries() == 3);
    REQUIRE_THROWS_AS(o.query(3), UsageError);

    // random access sequences: raw equals the number of distinct vertices
    SplitMix64 rng(99);
    ValueFunction big{std::vector<std::uint64_t>(40, 1)};
    CountingOracle ob(big);
    std::set<VertexId> distinct;
    for (int i = 0; i < 500; ++i) {
        auto v = static_cast<VertexId>(rng.next_below(40));
        distinct.insert(v);
        ob.query(v);
        REQUIRE(ob.raw_queries() == distinct.size());
    }
}

TEST_CASE("order keys break ties lexicographically") {
    ValueFunction f{{0, 0, 0, 7}};
    CountingOracle o(f);
    REQUIRE(o.query(3) == OrderKey{7, 3});
    REQUIRE(OrderKey{5, 2} < OrderKey{5, 9});
    REQUIRE(OrderKey{4, 9} < OrderKey{5, 2});

    // strict total order on random keys
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        OrderKey a{rng.next_below(4), static_cast<VertexId>(rng.next_below(6))};
        OrderKey b{rng.next_below(4), static_cast<VertexId>(rng.next_below(6))};
        OrderKey c{rng.next_below(4), static_cast<VertexId>(rng.next_below(6))};
        REQUIRE((a < b || b < a || a == b));                  // total
        if (a < b) REQUIRE_FALSE(b < a);                      // antisymmetric
        if (a < b && b < c) REQUIRE(a < c);                   // transitive
        if (a.value == b.value && a.vertex == b.vertex) REQUIRE(a == b);
    }
}

TEST_CASE("is_local_min checks all neighbors and certifies") {
    Graph p5 = make_path(5);
    ValueFunction f{{3, 2, 1, 2, 3}};
    {
        CountingOracle o(f);
        auto check = is_local_min(p5, o, 2);
        REQUIRE(check.is_minimum);
        REQUIRE(check.certificate.neighbor_keys.size() == 2);
        REQUIRE(o.raw_queries() == 3); // the vertex and both neighbors
    }
    {
        CountingOracle o(f);
        REQUIRE_FALSE(is_local_min(p5, o, 1).is_minimum);
    }
    // constant f on one edge: tie broken by vertex id
    Graph edge = make_path(2);
    ValueFunction z{{4, 4}};
    CountingOracle o(z);
    REQUIRE(is_local_min(edge, o, 0).is_minimum);
    REQUIRE_FALSE(is_local_min(edge, o, 1).is_minimum);
}

TEST_CASE("brute force reference solver") {
    Graph grid = make_grid(4, 4);
    REQUIRE(brute_force_local_min(grid, row_major(grid)) == 0);

    ValueFunction constant{std::vector<std::uint64_t>(16, 3)};
    REQUIRE(brute_force_local_min(grid, constant) == 0);

    Graph p9 = make_path(9);
    ValueFunction f = random_values(p9, 5);
    VertexId got = brute_force_local_min(p9, f);
    // independent exhaustive scan
    VertexId want = 0;
    for (VertexId v = 1; v < 9; ++v)
        if (std::pair(f(v), v) < std::pair(f(want), want)) want = v;
    REQUIRE(got == want);
    REQUIRE(verify_local_min(p9, f, got));

    REQUIRE_THROWS_AS(brute_force_local_min(Graph(0, {}), ValueFunction{}), UsageError);
}

TEST_CASE("every instance has a local minimum and brute force finds one") {
    auto corpus = locmin_test::build_corpus(true);
    for (const auto& inst : corpus.instances) {
        if (inst.graph->num_vertices() > 64) continue;
        MatrixGraph m = MatrixGraph::from(*inst.graph);
        auto minima = m.local_minima(inst.values);
        REQUIRE_FALSE(minima.empty());
        VertexId bf = brute_force_local_min(*inst.graph, inst.values);
        REQUIRE(std::find(minima.begin(), minima.end(), bf) != minima.end());
    }
}

TEST_CASE("value generators") {
    Graph grid = make_grid(4, 4);

    // valley: unique local minimum at the center under exact key comparison
    ValueFunction v = valley(grid, 2, 2);
    MatrixGraph m = MatrixGraph::from(grid);
    auto minima = m.local_minima(v);
    REQUIRE(minima == std::vector<VertexId>{10});

    ValueFunction rm = row_major(grid);
    REQUIRE(m.local_minima(rm) == std::vector<VertexId>{0});

    REQUIRE(random_values(grid, 9).values == random_values(grid, 9).values);
    REQUIRE(random_values(grid, 9).values != random_values(grid, 10).values);

    Graph p = make_path(100);
    ValueFunction st = staircase_path(p, 7);
    // strictly monotone along the path: exactly one local minimum at an end
    auto path_minima = MatrixGraph::from(p).local_minima(st);
    REQUIRE(path_minima.size() == 1);
    REQUIRE(p.degree(path_minima.front()) == 1);

    REQUIRE_THROWS_AS(staircase_path(make_star(5), 1), UsageError);
    REQUIRE_THROWS_AS(row_major(make_path(5)), UsageError);
    REQUIRE_THROWS_AS(valley(grid, 7, 0), UsageError);
}

TEST_CASE("value files round-trip and validate") {
    Graph g = make_grid(3, 3);
    ValueFunction f = random_values(g, 4);
    std::ostringstream buf;
    write_values(buf, f);
    std::istringstream in(buf.str());
    ValueFunction h = read_values(in, 9);
    REQUIRE(h.values == f.values);

    auto expect_error = [](const std::string& text, std::size_t n) {
        std::istringstream is(text);
        REQUIRE_THROWS_AS(read_values(is, n), UsageError);
    };
    expect_error("0 1\n", 2);           // missing vertex 1
    expect_error("0 1\n0 2\n", 1);      // duplicate
    expect_error("5 1\n", 2);           // out of range
    expect_error("nonsense\n", 1);      // parse failure
}
