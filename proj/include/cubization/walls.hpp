#pragma once

// Spaces with walls: one wall per bipartition of the k components left after
// deleting a base edge's preimage from the cover, or per orbit edge in the
// separating-edge branch on a generic base graph.

#include <cstdint>
#include <vector>

#include "cubization/bitset.hpp"
#include "cubization/cover.hpp"
#include "cubization/multigraph.hpp"

namespace cubization {

struct Wall {
    Bitset side;       // canonical halfspace, always contains point 0
    int base_edge = 0;
    std::uint32_t mask = 1;  // component subset on the canonical side

    bool separates(std::size_t u, std::size_t v) const { return side.test(u) != side.test(v); }
};

struct WallSpace {
    std::size_t point_count = 0;
    std::vector<Wall> walls;
};

// connected components of the cover minus the preimage of one base edge,
// ordered by minimal vertex; their count must equal k
std::vector<Bitset> edge_preimage_components(const CoverGraph& cover, int base_edge);

// all 2^(k-1)-1 bipartitions of the component family, the component of the
// lowest point always on the canonical side, enumerated by ascending mask
std::vector<Wall> walls_from_components(const std::vector<Bitset>& components, int base_edge);

WallSpace wall_space_from_cover(const Multigraph& base, const CoverGraph& cover);

// separating-edge branch: every orbit edge must be a bridge of the graph;
// one wall per orbit edge, points are the base vertices
WallSpace wall_space_from_bridge(const Multigraph& graph, const std::vector<int>& orbit_edges);

std::uint64_t wall_distance(const WallSpace& space, std::size_t u, std::size_t v);

struct WallAction {
    std::vector<std::uint32_t> wall_image;  // permutation of wall indices
    std::vector<char> flip;  // 1 when the canonical side lands on the image's complement
};

// point_perm must permute the space's points and map walls to walls
WallAction act_on_walls(const WallSpace& space, const std::vector<std::uint32_t>& point_perm);

std::vector<std::uint64_t> orbit_displacement(const WallSpace& space,
                                              const std::vector<std::uint32_t>& point_perm,
                                              std::size_t basepoint, int j_max);

}  // namespace cubization
