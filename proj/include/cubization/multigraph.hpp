#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "cubization/groups.hpp"

namespace cubization {

// Oriented half-edge. Every edge is a pair of opposite darts; parallel edges
// and loops stay distinguishable at the dart level, which keeps double
// edges, edge preimages and voltage signs unambiguous.
struct Dart {
    int source = -1;
    int target = -1;
    int symbol = -1;  // generator-symbol index, or -1 on unlabeled graphs
    int opposite = -1;
    int edge = -1;
};

// Dart-based multigraph. For a Cayley graph built from (group, generators)
// the dart with id v*2m + s is (vertex v, symbol s), and edges are indexed
// by their lexicographically smaller dart. Graphs built from explicit edge
// lists keep the input edge order.
struct Multigraph {
    int vertex_count = 0;
    int symbol_count = 0;  // 2m for Cayley builds, 0 otherwise
    std::vector<std::string> symbol_names;
    std::vector<Dart> darts;
    std::vector<int> edge_dart;  // canonical dart of each edge
    std::vector<int> adj_offset;
    std::vector<int> adj_darts;  // dart ids grouped by source, ascending

    int edge_count() const { return static_cast<int>(edge_dart.size()); }
    int dart_count() const { return static_cast<int>(darts.size()); }
    int degree(int v) const { return adj_offset[v + 1] - adj_offset[v]; }

    // Endpoints of an edge as (source, target) of its canonical dart.
    std::pair<int, int> edge_ends(int e) const {
        const Dart& d = darts[edge_dart[e]];
        return {d.source, d.target};
    }

    void build_adjacency();

    struct EdgeSpec {
        int u, v;
        std::string label;
    };
    static Multigraph from_edges(int vertices, const std::vector<EdgeSpec>& edges);
};

Multigraph build_cayley(const FiniteGroup& group, const GeneratorSet& gens);

bool is_connected(const Multigraph& g);

// Breadth-first spanning tree from vertex 0, darts explored in id order
// (symbol order, then vertex discovery order).
struct SpanningTree {
    int root = 0;
    std::vector<int> parent_dart;   // dart ending at v, -1 at the root
    std::vector<int> order;         // vertices in discovery order
    std::vector<char> edge_in_tree;
};

SpanningTree spanning_tree(const Multigraph& g);

int cycle_rank(const Multigraph& g);

// Edges whose removal disconnects the graph, ascending. Parallel edges are
// never bridges.
std::vector<int> bridges(const Multigraph& g);

// Label-preserving automorphism of a Cayley graph; darts map by
// (v, s) -> (vertex_map[v], s).
struct GraphAutomorphism {
    std::vector<int> vertex_map;

    int apply_vertex(int v) const { return vertex_map[v]; }
    int apply_dart(const Multigraph& g, int dart) const {
        const Dart& d = g.darts[dart];
        return vertex_map[d.source] * g.symbol_count + d.symbol;
    }
};

GraphAutomorphism left_mult(const FiniteGroup& group, int g);

GraphAutomorphism compose(const GraphAutomorphism& outer, const GraphAutomorphism& inner);

}  // namespace cubization
