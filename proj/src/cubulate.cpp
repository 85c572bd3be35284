#include "cubization/cubulate.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>

#include "cubization/errors.hpp"

namespace cubization {

WallGeometry make_wall_geometry(const WallSpace& space) {
    WallGeometry g;
    g.wall_count = static_cast<int>(space.walls.size());
    g.quad.assign(static_cast<std::size_t>(g.wall_count) * g.wall_count, 0);
    for (int i = 0; i < g.wall_count; ++i)
        for (int j = 0; j < g.wall_count; ++j) {
            std::uint8_t bits = 0;
            for (int ci = 0; ci < 2; ++ci)
                for (int cj = 0; cj < 2; ++cj)
                    if (Bitset::intersect_any(space.walls[i].side, ci, space.walls[j].side, cj))
                        bits |= std::uint8_t(1) << (ci * 2 + cj);
            g.quad[static_cast<std::size_t>(i) * g.wall_count + j] = bits;
        }
    return g;
}

Orientation principal_orientation(const WallSpace& space, std::size_t point) {
    if (point >= space.point_count) throw ValidationError("principal_orientation: bad point");
    if (space.walls.size() > 64) throw SizeLimitError("orientation masks capped at 64 walls");
    Orientation o = 0;
    for (std::size_t w = 0; w < space.walls.size(); ++w)
        if (!space.walls[w].side.test(point)) o |= Orientation(1) << w;
    return o;
}

bool is_consistent(const WallGeometry& geom, Orientation o) {
    for (int i = 0; i < geom.wall_count; ++i)
        for (int j = i + 1; j < geom.wall_count; ++j)
            if (!geom.quadrant(i, o >> i & 1, j, o >> j & 1)) return false;
    return true;
}

int DualSkeleton::vertex_index(Orientation o) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), o);
    if (it == vertices.end() || *it != o) return -1;
    return static_cast<int>(it - vertices.begin());
}

DualSkeleton dual_skeleton(const WallSpace& space, int cap_walls) {
    int w = static_cast<int>(space.walls.size());
    if (w > cap_walls)
        throw CapExceeded("dual skeleton of " + std::to_string(w) + " walls exceeds cap " +
                          std::to_string(cap_walls));
    WallGeometry geom = make_wall_geometry(space);

    // single-wall flips from the principal orientations
    std::unordered_set<Orientation> reached;
    std::queue<Orientation> q;
    std::vector<Orientation> principals(space.point_count);
    for (std::size_t p = 0; p < space.point_count; ++p) {
        principals[p] = principal_orientation(space, p);
        structural_require(is_consistent(geom, principals[p]),
                           "principal orientation is inconsistent");
        if (reached.insert(principals[p]).second) q.push(principals[p]);
    }
    if (space.point_count == 0) {
        reached.insert(0);
        q.push(0);
    }
    auto flip_ok = [&](Orientation o, int i) {
        bool side = (o >> i & 1) == 0;  // side after the flip
        for (int j = 0; j < w; ++j)
            if (j != i && !geom.quadrant(i, side, j, o >> j & 1)) return false;
        return true;
    };
    while (!q.empty()) {
        Orientation o = q.front();
        q.pop();
        for (int i = 0; i < w; ++i) {
            Orientation o2 = o ^ (Orientation(1) << i);
            if (reached.count(o2)) continue;
            if (flip_ok(o, i)) {
                reached.insert(o2);
                q.push(o2);
            }
        }
    }

    DualSkeleton s;
    s.wall_count = w;
    s.vertices.assign(reached.begin(), reached.end());
    std::sort(s.vertices.begin(), s.vertices.end());
    for (std::size_t a = 0; a < s.vertices.size(); ++a)
        for (int i = 0; i < w; ++i) {
            Orientation o2 = s.vertices[a] ^ (Orientation(1) << i);
            if (o2 < s.vertices[a]) continue;  // count each edge once
            int b = s.vertex_index(o2);
            if (b >= 0) s.edges.emplace_back(static_cast<int>(a), b);
        }
    std::sort(s.edges.begin(), s.edges.end());

    s.principal.resize(space.point_count);
    for (std::size_t p = 0; p < space.point_count; ++p) {
        int idx = s.vertex_index(principals[p]);
        structural_require(idx >= 0, "principal orientation missing from the flip component");
        s.principal[p] = static_cast<std::uint32_t>(idx);
    }
    return s;
}

std::vector<Orientation> enumerate_consistent(const WallSpace& space, int cap_walls) {
    int w = static_cast<int>(space.walls.size());
    if (w > cap_walls)
        throw CapExceeded("orientation enumeration of " + std::to_string(w) +
                          " walls exceeds cap " + std::to_string(cap_walls));
    WallGeometry geom = make_wall_geometry(space);
    std::vector<Orientation> out;
    for (Orientation o = 0; o < (Orientation(1) << w); ++o)
        if (is_consistent(geom, o)) out.push_back(o);
    return out;
}

std::vector<std::vector<int>> graph_distances(int vertex_count,
                                              const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<int>> dist(vertex_count, std::vector<int>(vertex_count, -1));
    for (int s = 0; s < vertex_count; ++s) {
        dist[s][s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int t : adj[v])
                if (dist[s][t] == -1) {
                    dist[s][t] = dist[s][v] + 1;
                    q.push(t);
                }
        }
    }
    return dist;
}

bool is_median_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges, int cap) {
    if (vertex_count > cap)
        throw CapExceeded("median check capped at " + std::to_string(cap) + " vertices");
    if (vertex_count == 0) return true;
    std::vector<std::vector<int>> dist = graph_distances(vertex_count, edges);
    for (int v = 0; v < vertex_count; ++v)
        if (dist[0][v] < 0) throw ValidationError("median check needs a connected graph");

    // interval bitsets I(u,v), packed words
    int n = vertex_count;
    int words = (n + 63) / 64;
    std::vector<std::uint64_t> interval(static_cast<std::size_t>(n) * n * words, 0);
    auto iv = [&](int u, int v) {
        return interval.data() + (static_cast<std::size_t>(u) * n + v) * words;
    };
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) {
            std::uint64_t* row = iv(u, v);
            for (int x = 0; x < n; ++x)
                if (dist[u][x] + dist[x][v] == dist[u][v]) row[x >> 6] |= std::uint64_t(1) << (x & 63);
            if (u != v) std::copy(row, row + words, iv(v, u));
        }

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int x = v + 1; x < n; ++x) {
                const std::uint64_t* a = iv(u, v);
                const std::uint64_t* b = iv(v, x);
                const std::uint64_t* c = iv(u, x);
                int medians = 0;
                for (int t = 0; t < words && medians <= 1; ++t)
                    medians += std::popcount(a[t] & b[t] & c[t]);
                if (medians != 1) return false;
            }
    return true;
}

namespace {

// Bron-Kerbosch with pivoting on crossing masks, collecting maximal cliques
void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                   std::uint64_t x, std::vector<std::uint64_t>& census, int& best) {
    if (p == 0 && x == 0) {
        int size = std::popcount(r);
        if (size >= static_cast<int>(census.size())) census.resize(size + 1, 0);
        ++census[size];
        best = std::max(best, size);
        return;
    }
    std::uint64_t px = p | x;
    int pivot = std::countr_zero(px);
    std::uint64_t cand = px & ~(std::uint64_t(0));
    int best_deg = -1;
    while (cand) {
        int v = std::countr_zero(cand);
        cand &= cand - 1;
        int deg = std::popcount(p & adj[v]);
        if (deg > best_deg) {
            best_deg = deg;
            pivot = v;
        }
    }
    std::uint64_t ext = p & ~adj[pivot];
    while (ext) {
        int v = std::countr_zero(ext);
        ext &= ext - 1;
        std::uint64_t bit = std::uint64_t(1) << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], census, best);
        p &= ~bit;
        x |= bit;
    }
}

std::vector<std::uint64_t> crossing_masks(const WallSpace& space, int cap) {
    int w = static_cast<int>(space.walls.size());
    if (w > cap || w > 64)
        throw CapExceeded("cube census of " + std::to_string(w) + " walls exceeds cap " +
                          std::to_string(std::min<int>(cap, 64)));
    WallGeometry geom = make_wall_geometry(space);
    std::vector<std::uint64_t> adj(w, 0);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j)
            if (i != j && geom.cross(i, j)) adj[i] |= std::uint64_t(1) << j;
    return adj;
}

}  // namespace

std::vector<std::uint64_t> cube_census(const WallSpace& space, int cap) {
    std::vector<std::uint64_t> adj = crossing_masks(space, cap);
    int w = static_cast<int>(adj.size());
    std::vector<std::uint64_t> census(1, 0);
    int best = 0;
    if (w == 0) {
        census[0] = 1;
        return census;
    }
    std::uint64_t all = w == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << w) - 1;
    bron_kerbosch(adj, 0, all, 0, census, best);
    return census;
}

int max_cube_dimension(const WallSpace& space, int cap) {
    std::vector<std::uint64_t> census = cube_census(space, cap);
    for (int size = static_cast<int>(census.size()) - 1; size >= 0; --size)
        if (census[size] > 0) return size;
    return 0;
}

std::vector<std::uint32_t> act_on_dual(const WallSpace& space, const DualSkeleton& skeleton,
                                       const WallAction& action,
                                       const std::vector<std::uint32_t>& point_perm) {
    int w = skeleton.wall_count;
    structural_require(static_cast<int>(action.wall_image.size()) == w,
                       "act_on_dual: wall action size mismatch");
    std::vector<std::uint32_t> perm(skeleton.vertices.size());
    for (std::size_t vi = 0; vi < skeleton.vertices.size(); ++vi) {
        Orientation o = skeleton.vertices[vi];
        Orientation image = 0;
        for (int i = 0; i < w; ++i) {
            std::uint64_t bit = (o >> i & 1) ^ static_cast<std::uint64_t>(action.flip[i]);
            image |= bit << action.wall_image[i];
        }
        int idx = skeleton.vertex_index(image);
        structural_require(idx >= 0, "orientation image leaves the skeleton");
        perm[vi] = static_cast<std::uint32_t>(idx);
    }

    std::set<std::pair<int, int>> edge_set(skeleton.edges.begin(), skeleton.edges.end());
    for (auto [a, b] : skeleton.edges) {
        int ia = static_cast<int>(perm[a]);
        int ib = static_cast<int>(perm[b]);
        if (ia > ib) std::swap(ia, ib);
        structural_require(edge_set.count({ia, ib}) == 1, "dual action breaks an edge");
    }
    for (std::size_t p = 0; p < space.point_count; ++p)
        structural_require(perm[skeleton.principal[p]] == skeleton.principal[point_perm[p]],
                           "dual action does not follow the point action");
    return perm;
}

}  // namespace cubization
