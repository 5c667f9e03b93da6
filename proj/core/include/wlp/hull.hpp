#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wlp/bridge.hpp"
#include "wlp/vec.hpp"

namespace wlp {

// 3D convex hull of a loop's point set. Only the vertices matter downstream;
// faces are kept from construction for diagnostics and statistics.
struct ConvexHull {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;
    double z_min = 0.0;
    double z_max = 0.0;
    std::uint64_t source_n = 0;
    std::uint64_t stream_index = 0;
    bool degenerate = false;
};

// Quickhull with conflict lists; orientation decisions use a tolerance of
// 1e-12 relative to the point cloud extent. Inputs of affine dimension < 3
// come back flagged degenerate (vertices/faces empty) rather than failing.
ConvexHull convex_hull_of_points(std::span<const Vec3> points, std::uint64_t source_n,
                                 std::uint64_t stream_index);

ConvexHull convex_hull(const UnitLoop& loop);

// {offset + scale * v_i} for every vertex; scale must be positive.
std::vector<Vec3> transform(const ConvexHull& hull, double scale, Vec3 offset);

struct HullStatsRow {
    std::uint64_t n = 0;
    double mean_vertices = 0.0;
    double se_vertices = 0.0;
    double mean_faces = 0.0;
    double se_faces = 0.0;
    double mean_build_seconds = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t degenerate_count = 0;
};

struct HullStats {
    std::vector<HullStatsRow> rows;
};

HullStats hull_statistics(std::span<const std::uint64_t> n_values, std::uint64_t loops_per_n,
                          std::uint64_t master_seed);

}  // namespace wlp
