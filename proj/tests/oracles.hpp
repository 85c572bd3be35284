#pragma once

// test-side reference implementations, deliberately naive and independent of
// the library's data layouts: set-based closure, DSU components, edge-removal
// bridge detection, definition-level orientation consistency, recursive max
// clique

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "cubization/bitset.hpp"
#include "cubization/groups.hpp"
#include "cubization/multigraph.hpp"
#include "cubization/walls.hpp"

namespace oracle {

inline std::set<std::vector<int>> closure(const std::vector<std::vector<int>>& gens) {
    std::size_t d = gens.empty() ? 1 : gens[0].size();
    std::vector<int> id(d);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> work{id};
    while (!work.empty()) {
        std::vector<int> p = work.back();
        work.pop_back();
        for (const auto& g : gens) {
            std::vector<int> q(d);
            for (std::size_t i = 0; i < d; ++i) q[i] = g[p[i]];
            if (seen.insert(q).second) work.push_back(q);
        }
    }
    return seen;
}

inline std::vector<std::vector<int>> components(int n,
                                                const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : edges) parent[find(u)] = find(v);
    std::vector<std::vector<int>> comps;
    std::vector<int> label(n, -1);
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (label[r] < 0) {
            label[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[label[r]].push_back(v);
    }
    return comps;
}

// bridge iff removing the edge disconnects its endpoints
inline std::vector<int> bridges(const cubization::Multigraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<std::pair<int, int>> kept;
        for (int f = 0; f < g.edge_count(); ++f)
            if (f != e) kept.push_back(g.edge_ends(f));
        auto comps = components(g.vertex_count, kept);
        auto [u, v] = g.edge_ends(e);
        bool same = false;
        for (const auto& c : comps) {
            bool has_u = false, has_v = false;
            for (int x : c) {
                has_u = has_u || x == u;
                has_v = has_v || x == v;
            }
            same = same || (has_u && has_v);
        }
        if (!same) out.push_back(e);
    }
    return out;
}

// consistent by definition: the chosen halfspaces pairwise intersect
inline std::vector<std::uint64_t> consistent_orientations(const cubization::WallSpace& space) {
    int w = static_cast<int>(space.walls.size());
    std::vector<std::uint64_t> out;
    for (std::uint64_t o = 0; o < (std::uint64_t{1} << w); ++o) {
        bool ok = true;
        for (int i = 0; i < w && ok; ++i)
            for (int j = i + 1; j < w && ok; ++j)
                ok = cubization::Bitset::intersect_any(space.walls[i].side, o >> i & 1,
                                                       space.walls[j].side, o >> j & 1);
        if (ok) out.push_back(o);
    }
    return out;
}

inline void clique_extend(const std::vector<std::vector<char>>& adj, std::vector<int>& cur,
                          int start, std::size_t& best) {
    best = std::max(best, cur.size());
    for (int v = start; v < static_cast<int>(adj.size()); ++v) {
        bool fits = true;
        for (int u : cur) fits = fits && adj[u][v];
        if (!fits) continue;
        cur.push_back(v);
        clique_extend(adj, cur, v + 1, best);
        cur.pop_back();
    }
}

inline std::size_t max_clique(const std::vector<std::vector<char>>& adj) {
    std::vector<int> cur;
    std::size_t best = 0;
    clique_extend(adj, cur, 0, best);
    return best;
}

inline std::uint64_t perm_order(const std::vector<std::uint32_t>& perm) {
    std::vector<char> seen(perm.size(), 0);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

inline std::vector<int> bfs_distances(int n, const std::vector<std::pair<int, int>>& edges,
                                      int source) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    return dist;
}

// span of the generator elements inside a finite group's table
inline std::size_t generated_size(const cubization::FiniteGroup& g,
                                  const std::vector<int>& gen_elements) {
    std::vector<char> seen(g.order, 0);
    std::vector<int> work{cubization::FiniteGroup::identity};
    seen[cubization::FiniteGroup::identity] = 1;
    std::size_t n = 1;
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int s : gen_elements) {
            int w = g.mult(v, s);
            if (!seen[w]) {
                seen[w] = 1;
                ++n;
                work.push_back(w);
            }
        }
    }
    return n;
}

}  // namespace oracle
