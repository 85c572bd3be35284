#include "cubization/walls.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "cubization/errors.hpp"

namespace cubization {

std::vector<Bitset> edge_preimage_components(const CoverGraph& cover, int base_edge) {
    const Multigraph& g = cover.graph;
    std::uint64_t lo = static_cast<std::uint64_t>(base_edge) * cover.fiber;
    std::uint64_t hi = lo + cover.fiber;
    auto removed = [&](int edge) {
        return static_cast<std::uint64_t>(edge) >= lo && static_cast<std::uint64_t>(edge) < hi;
    };

    std::vector<int> comp(g.vertex_count, -1);
    int count = 0;
    for (int start = 0; start < g.vertex_count; ++start) {
        if (comp[start] != -1) continue;
        int c = count++;
        comp[start] = c;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int a = g.adj_offset[v]; a < g.adj_offset[v + 1]; ++a) {
                const Dart& d = g.darts[g.adj_darts[a]];
                if (removed(d.edge) || comp[d.target] != -1) continue;
                comp[d.target] = c;
                q.push(d.target);
            }
        }
    }
    structural_require(count == cover.k, "edge preimage split the cover into " +
                                             std::to_string(count) + " parts, expected " +
                                             std::to_string(cover.k));
    std::vector<Bitset> components(count, Bitset(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v) components[comp[v]].set(v);
    return components;  // scan order puts the component of vertex 0 first
}

std::vector<Wall> walls_from_components(const std::vector<Bitset>& components, int base_edge) {
    int k = static_cast<int>(components.size());
    if (k < 2) throw ValidationError("walls need at least 2 components");
    if (k > 30) throw SizeLimitError("component subset enumeration capped at 30");
    std::size_t points = components[0].size();
    for (const Bitset& c : components) {
        structural_require(c.size() == points && c.any(), "component is empty or mis-sized");
    }
    std::vector<Wall> walls;
    std::uint32_t full = (1u << k) - 1;
    for (std::uint32_t mask = 1; mask < full; mask += 2) {  // component 0 stays on side one
        Wall w;
        w.base_edge = base_edge;
        w.mask = mask;
        w.side = Bitset(points);
        for (int c = 0; c < k; ++c)
            if (mask >> c & 1) w.side |= components[c];
        walls.push_back(std::move(w));
    }
    structural_require(walls.size() == (std::size_t(1) << (k - 1)) - 1,
                       "wall count per edge is not 2^(k-1)-1");
    return walls;
}

WallSpace wall_space_from_cover(const Multigraph& base, const CoverGraph& cover) {
    std::vector<int> cuts = bridges(base);
    if (!cuts.empty())
        throw BridgePresent("base graph has " + std::to_string(cuts.size()) +
                            " bridge(s), use the separating-edge branch");
    WallSpace space;
    space.point_count = static_cast<std::size_t>(cover.graph.vertex_count);
    for (int e = 0; e < base.edge_count(); ++e) {
        std::vector<Bitset> comps = edge_preimage_components(cover, e);
        std::vector<Wall> walls = walls_from_components(comps, e);
        for (Wall& w : walls) space.walls.push_back(std::move(w));
    }
    return space;
}

WallSpace wall_space_from_bridge(const Multigraph& graph, const std::vector<int>& orbit_edges) {
    if (orbit_edges.empty())
        throw ValidationError("the separating-edge branch needs at least one orbit edge");
    std::vector<int> cuts = bridges(graph);
    std::vector<char> is_bridge(graph.edge_count(), 0);
    for (int e : cuts) is_bridge[e] = 1;

    std::vector<int> orbit = orbit_edges;
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());

    WallSpace space;
    space.point_count = static_cast<std::size_t>(graph.vertex_count);
    for (int e : orbit) {
        if (e < 0 || e >= graph.edge_count())
            throw ValidationError("orbit edge " + std::to_string(e) + " out of range");
        if (!is_bridge[e])
            throw ValidationError("orbit edge " + std::to_string(e) + " is not a bridge");
        // side of the bridge containing vertex 0
        std::vector<char> seen(graph.vertex_count, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int a = graph.adj_offset[v]; a < graph.adj_offset[v + 1]; ++a) {
                const Dart& d = graph.darts[graph.adj_darts[a]];
                if (d.edge == e || seen[d.target]) continue;
                seen[d.target] = 1;
                q.push(d.target);
            }
        }
        Wall w;
        w.base_edge = e;
        w.mask = 1;
        w.side = Bitset(space.point_count);
        for (int v = 0; v < graph.vertex_count; ++v)
            if (seen[v]) w.side.set(v);
        structural_require(w.side.any() && w.side.count() < space.point_count,
                           "bridge removal did not split the graph");
        space.walls.push_back(std::move(w));
    }
    return space;
}

std::uint64_t wall_distance(const WallSpace& space, std::size_t u, std::size_t v) {
    if (u >= space.point_count || v >= space.point_count)
        throw ValidationError("wall_distance: point out of range");
    std::uint64_t d = 0;
    for (const Wall& w : space.walls)
        if (w.separates(u, v)) ++d;
    return d;
}

WallAction act_on_walls(const WallSpace& space, const std::vector<std::uint32_t>& point_perm) {
    if (point_perm.size() != space.point_count)
        throw ValidationError("act_on_walls: permutation degree mismatch");
    std::size_t nw = space.walls.size();
    WallAction action;
    action.wall_image.assign(nw, 0);
    action.flip.assign(nw, 0);
    std::vector<char> used(nw, 0);
    for (std::size_t i = 0; i < nw; ++i) {
        Bitset image(space.point_count);
        for (std::size_t p : space.walls[i].side.members()) image.set(point_perm[p]);
        bool matched = false;
        for (std::size_t j = 0; j < nw && !matched; ++j) {
            if (used[j]) continue;
            if (image == space.walls[j].side) {
                action.wall_image[i] = static_cast<std::uint32_t>(j);
                action.flip[i] = 0;
            } else if (image == space.walls[j].side.complement()) {
                action.wall_image[i] = static_cast<std::uint32_t>(j);
                action.flip[i] = 1;
            } else {
                continue;
            }
            used[j] = 1;
            matched = true;
        }
        structural_require(matched, "image of wall " + std::to_string(i) + " is not a wall");
    }
    return action;
}

std::vector<std::uint64_t> orbit_displacement(const WallSpace& space,
                                              const std::vector<std::uint32_t>& point_perm,
                                              std::size_t basepoint, int j_max) {
    if (j_max < 1) throw ValidationError("orbit_displacement: j_max must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(j_max);
    std::size_t p = basepoint;
    for (int j = 0; j < j_max; ++j) {
        p = point_perm[p];
        out.push_back(wall_distance(space, basepoint, p));
    }
    return out;
}

}  // namespace cubization
