#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "locmin/common.hpp"
#include "locmin/generators.hpp"
#include "locmin/graph.hpp"

namespace locmin {

// Graph file format (text):
//   n m g                      header: vertex count, edge count, genus bound
//   u v                        m edge lines with u < v
//   ROTATIONS                  optional section
//   <cyclic neighbor order>    n lines, one per vertex (blank for isolated)

inline void write_graph(std::ostream& os, const Graph& g) {
    os << g.num_vertices() << ' ' << g.num_edges() << ' ' << g.genus_bound() << '\n';
    g.for_each_edge([&](VertexId u, VertexId v) { os << u << ' ' << v << '\n'; });
    if (g.has_embedding()) {
        os << "ROTATIONS\n";
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            bool first = true;
            g.for_rotation(v, [&](VertexId u) {
                if (!first) os << ' ';
                os << u;
                first = false;
            });
            os << '\n';
        }
    }
}

inline void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open " + path + " for writing");
    write_graph(os, g);
}

namespace detail {

inline UsageError parse_error(const std::string& what, std::size_t line) {
    return UsageError("graph parse error at line " + std::to_string(line) + ": " + what);
}

} // namespace detail

inline Graph read_graph(std::istream& is) {
    std::size_t lineno = 0;
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            return true;
        }
        return false;
    };

    if (!next_line()) throw detail::parse_error("missing header", 1);
    std::size_t n = 0, m = 0;
    long long genus = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> n >> m >> genus) || genus < 0)
            throw detail::parse_error("expected header 'n m g'", lineno);
    }

    std::vector<Graph::Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!next_line()) throw detail::parse_error("missing edge line", lineno + 1);
        std::istringstream es(line);
        long long u = -1, v = -1;
        if (!(es >> u >> v) || u < 0 || v < 0)
            throw detail::parse_error("expected edge 'u v'", lineno);
        if (u >= v) throw detail::parse_error("edges must satisfy u < v", lineno);
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }

    std::vector<std::vector<VertexId>> rotations;
    if (next_line()) {
        std::string token;
        {
            std::istringstream ts(line);
            ts >> token;
        }
        if (token.empty()) {
            // trailing blank line is fine
        } else if (token == "ROTATIONS") {
            rotations.resize(n);
            for (std::size_t v = 0; v < n; ++v) {
                if (!next_line())
                    throw detail::parse_error("missing rotation line for vertex " + std::to_string(v),
                                              lineno + 1);
                std::istringstream rs(line);
                long long u;
                while (rs >> u) {
                    if (u < 0) throw detail::parse_error("negative vertex id", lineno);
                    rotations[v].push_back(static_cast<VertexId>(u));
                }
            }
        } else {
            throw detail::parse_error("unexpected content '" + token + "'", lineno);
        }
    }

    try {
        Graph g(n, edges, static_cast<unsigned>(genus), std::move(rotations));
        // Recover the grid family tag; the file format does not carry it.
        if (auto dims = detect_grid_dims(g)) {
            std::vector<std::vector<VertexId>> rot;
            if (g.has_embedding()) {
                rot.resize(n);
                for (VertexId v = 0; v < n; ++v)
                    g.for_rotation(v, [&](VertexId u) { rot[v].push_back(u); });
            }
            return Graph(n, edges, static_cast<unsigned>(genus), std::move(rot), *dims);
        }
        return g;
    } catch (const UsageError& e) {
        throw UsageError(std::string("invalid graph file: ") + e.what());
    }
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open " + path);
    return read_graph(is);
}

} // namespace locmin
