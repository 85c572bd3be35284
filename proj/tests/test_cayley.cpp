#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"

#include "cubization/groups.hpp"
#include "cubization/multigraph.hpp"
#include "oracles.hpp"

using namespace cubization;

namespace {

Multigraph cayley_of(const std::string& name) {
    auto [g, gens] = preset(name);
    return build_cayley(g, gens);
}

// multiset of neighbor vertices
std::vector<int> neighbors(const Multigraph& g, int v) {
    std::vector<int> out;
    for (int a = g.adj_offset[v]; a < g.adj_offset[v + 1]; ++a)
        out.push_back(g.darts[g.adj_darts[a]].target);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("cycle graph of a cyclic group") {
    auto [g, gens] = preset("cyclic:4");
    Multigraph m = build_cayley(g, gens);
    CHECK(m.vertex_count == 4);
    CHECK(m.edge_count() == 4);
    CHECK(m.symbol_count == 2);
    CHECK(is_connected(m));
    CHECK(cycle_rank(m) == 1);
    for (int v = 0; v < 4; ++v) CHECK(m.degree(v) == 2);
    // neighbors of each vertex are v*a and v*a^{-1}
    int a = gens.to_element[0];
    for (int v = 0; v < 4; ++v) {
        std::vector<int> want{g.mult(v, a), g.mult(v, g.inv(a))};
        std::sort(want.begin(), want.end());
        CHECK(neighbors(m, v) == want);
    }
}

TEST_CASE("involution generators make double edges") {
    Multigraph m = cayley_of("cyclic:2");
    CHECK(m.vertex_count == 2);
    CHECK(m.edge_count() == 2);  // a double edge between the two elements
    CHECK(cycle_rank(m) == 1);
    for (int e = 0; e < 2; ++e) {
        auto [u, v] = m.edge_ends(e);
        CHECK(((u == 0 && v == 1) || (u == 1 && v == 0)));
    }
    // dart (v, s) has id v*2m+s and its own symbol
    for (int v = 0; v < m.vertex_count; ++v)
        for (int s = 0; s < m.symbol_count; ++s) {
            const Dart& d = m.darts[v * m.symbol_count + s];
            CHECK(d.source == v);
            CHECK(d.symbol == s);
            CHECK(m.darts[d.opposite].opposite == v * m.symbol_count + s);
            CHECK(m.darts[d.opposite].edge == d.edge);
        }
}

TEST_CASE("dihedral Cayley graph mixes single and double edges") {
    Multigraph m = cayley_of("dihedral:3");
    CHECK(m.vertex_count == 6);
    CHECK(m.symbol_count == 4);
    CHECK(m.edge_count() == 12);
    CHECK(cycle_rank(m) == 7);
    for (int v = 0; v < 6; ++v) CHECK(m.degree(v) == 4);
    // count parallel pairs: the reflection contributes a double edge per vertex pair
    std::set<std::pair<int, int>> simple;
    int parallel = 0;
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        if (u > v) std::swap(u, v);
        if (!simple.insert({u, v}).second) ++parallel;
    }
    CHECK(parallel == 3);
}

TEST_CASE("spanning tree structure") {
    Multigraph m = cayley_of("dihedral:4");
    SpanningTree t = spanning_tree(m);
    CHECK(t.root == 0);
    CHECK((int)t.order.size() == m.vertex_count);
    CHECK(t.order[0] == 0);
    CHECK(t.parent_dart[0] == -1);
    int tree_edges = 0;
    for (char b : t.edge_in_tree) tree_edges += b;
    CHECK(tree_edges == m.vertex_count - 1);
    // every non-root vertex's parent dart ends at it and uses a tree edge
    for (int v = 1; v < m.vertex_count; ++v) {
        REQUIRE(t.parent_dart[v] >= 0);
        const Dart& d = m.darts[t.parent_dart[v]];
        CHECK(d.target == v);
        CHECK(t.edge_in_tree[d.edge]);
    }
}

TEST_CASE("bridges match the removal oracle") {
    SUBCASE("Cayley graphs are bridgeless") {
        for (const char* name : {"cyclic:5", "dihedral:3", "elementary_abelian_2:2"}) {
            Multigraph m = cayley_of(name);
            CHECK(bridges(m).empty());
            CHECK(oracle::bridges(m).empty());
        }
    }
    SUBCASE("path graph: every edge is a bridge") {
        Multigraph m = Multigraph::from_edges(
            4, {{0, 1, "e"}, {1, 2, "e"}, {2, 3, "e"}});
        CHECK(bridges(m) == std::vector<int>{0, 1, 2});
        CHECK(oracle::bridges(m) == std::vector<int>{0, 1, 2});
    }
    SUBCASE("two triangles joined by one edge") {
        Multigraph m = Multigraph::from_edges(6, {{0, 1, ""},
                                                  {1, 2, ""},
                                                  {2, 0, ""},
                                                  {3, 4, ""},
                                                  {4, 5, ""},
                                                  {5, 3, ""},
                                                  {2, 3, ""}});
        CHECK(bridges(m) == oracle::bridges(m));
        CHECK(bridges(m) == std::vector<int>{6});
    }
    SUBCASE("double edge is never a bridge") {
        Multigraph m = Multigraph::from_edges(3, {{0, 1, ""}, {0, 1, ""}, {1, 2, ""}});
        CHECK(bridges(m) == std::vector<int>{2});
        CHECK(oracle::bridges(m) == std::vector<int>{2});
    }
    SUBCASE("random-ish sparse graphs agree with the oracle") {
        // a fixed family with a mix of trees, cycles and pendants
        std::vector<Multigraph::EdgeSpec> edges;
        for (int i = 0; i + 1 < 9; ++i) edges.push_back({i, i + 1, ""});
        edges.push_back({3, 0, ""});
        edges.push_back({8, 5, ""});
        Multigraph m = Multigraph::from_edges(9, edges);
        CHECK(bridges(m) == oracle::bridges(m));
    }
}

TEST_CASE("left multiplication is a labeled automorphism") {
    auto [g, gens] = preset("dihedral:3");
    Multigraph m = build_cayley(g, gens);
    for (int x = 0; x < g.order; ++x) {
        GraphAutomorphism phi = left_mult(g, x);
        // darts map to darts with the same symbol and compatible endpoints
        for (int d = 0; d < m.dart_count(); ++d) {
            int img = phi.apply_dart(m, d);
            CHECK(m.darts[img].symbol == m.darts[d].symbol);
            CHECK(m.darts[img].source == phi.apply_vertex(m.darts[d].source));
            CHECK(m.darts[img].target == phi.apply_vertex(m.darts[d].target));
        }
    }
    // composition is covariant: left_mult(ab) = left_mult(a) after left_mult(b)
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            GraphAutomorphism lhs = left_mult(g, g.mult(a, b));
            GraphAutomorphism rhs = compose(left_mult(g, a), left_mult(g, b));
            CHECK(lhs.vertex_map == rhs.vertex_map);
        }
}

TEST_CASE("from_edges round trip and adjacency") {
    Multigraph m = Multigraph::from_edges(3, {{0, 1, "x"}, {1, 2, "y"}, {2, 0, "z"}});
    CHECK(m.vertex_count == 3);
    CHECK(m.edge_count() == 3);
    CHECK(m.dart_count() == 6);
    CHECK(is_connected(m));
    CHECK(cycle_rank(m) == 1);
    for (int v = 0; v < 3; ++v) CHECK(m.degree(v) == 2);
    Multigraph loner = Multigraph::from_edges(2, {});
    CHECK_FALSE(is_connected(loner));
}
