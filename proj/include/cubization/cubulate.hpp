#pragma once

// Dual cube-complex 1-skeleton of a finite wall space: consistent orientations
// reachable from the principal ones by single-wall flips, plus the median
// check, the cube census and the transported group action.

#include <cstdint>
#include <utility>
#include <vector>

#include "cubization/walls.hpp"

namespace cubization {

// orientation = one bit per wall, 0 canonical side, 1 complement
using Orientation = std::uint64_t;

inline constexpr int kDefaultWallCap = 20;
inline constexpr int kDefaultCensusCap = 64;
inline constexpr int kDefaultMedianCap = 500;

struct WallGeometry {
    int wall_count = 0;
    std::vector<std::uint8_t> quad;  // bit (ci*2+cj): quadrant nonempty

    bool quadrant(int i, bool ci, int j, bool cj) const {
        return quad[static_cast<std::size_t>(i) * wall_count + j] >> ((ci ? 2 : 0) + (cj ? 1 : 0)) & 1;
    }
    bool cross(int i, int j) const {
        return quad[static_cast<std::size_t>(i) * wall_count + j] == 0xF;
    }
};

WallGeometry make_wall_geometry(const WallSpace& space);

Orientation principal_orientation(const WallSpace& space, std::size_t point);
bool is_consistent(const WallGeometry& geom, Orientation o);

struct DualSkeleton {
    int wall_count = 0;
    std::vector<Orientation> vertices;            // sorted masks
    std::vector<std::pair<int, int>> edges;       // vertex index pairs, first < second
    std::vector<std::uint32_t> principal;         // point -> vertex index

    int vertex_index(Orientation o) const;  // -1 when absent
};

DualSkeleton dual_skeleton(const WallSpace& space, int cap_walls = kDefaultWallCap);

// every consistent orientation, for comparison with the flip component
std::vector<Orientation> enumerate_consistent(const WallSpace& space,
                                              int cap_walls = kDefaultWallCap);

bool is_median_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                     int cap = kDefaultMedianCap);

// all-pairs distances of a small simple graph, -1 when disconnected
std::vector<std::vector<int>> graph_distances(int vertex_count,
                                              const std::vector<std::pair<int, int>>& edges);

int max_cube_dimension(const WallSpace& space, int cap = kDefaultCensusCap);
// counts of maximal crossing cliques by size, index = size
std::vector<std::uint64_t> cube_census(const WallSpace& space, int cap = kDefaultCensusCap);

// induced vertex permutation of the skeleton; checks it is an automorphism
// and that principal vertices follow the point action
std::vector<std::uint32_t> act_on_dual(const WallSpace& space, const DualSkeleton& skeleton,
                                       const WallAction& action,
                                       const std::vector<std::uint32_t>& point_perm);

}  // namespace cubization
