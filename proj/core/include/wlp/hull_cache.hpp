#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wlp/hull.hpp"

namespace wlp {

// Little-endian binary cache, bit-exact round trip:
//   "WLHC" | version u32 | count u64 | master_seed u64
//   per hull: source_n u64, v u32, v * 3 f64 coordinates
//   CRC-32 (zlib) over all preceding bytes as u32 trailer.
// Faces are not persisted; z extents are recomputed on load and the record
// position becomes the hull's stream index.
inline constexpr std::uint32_t kHullCacheVersion = 1;

struct HullCacheData {
    std::vector<ConvexHull> hulls;
    std::uint64_t master_seed = 0;
};

void save_hulls(std::span<const ConvexHull> hulls, const std::string& path,
                std::uint64_t master_seed);

HullCacheData load_hulls(const std::string& path);

}  // namespace wlp
