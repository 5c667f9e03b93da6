#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlp/rng.hpp"
#include "wlp/vec.hpp"

namespace wlp {

// Discretized standard Brownian bridge over unit proper time, pinned to the
// origin at both ends. points has n+1 entries.
struct UnitLoop {
    std::vector<Vec3> points;
    std::uint64_t n = 0;
    RngStream seed_path;
};

// Exact conditioned-Gaussian construction B_{k/n} = W_{k/n} - (k/n) W_1 from
// iid increments of variance 1/n per component; no time-stepping bias.
UnitLoop sample_bridge(std::uint64_t n, RngStream stream);

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// (max_k z_k - min_k z_k)^4 of one loop.
double dz4_value(const UnitLoop& loop);

// Sample mean and standard error of dz4_value over the loops.
MomentEstimate dz4_moment(std::span<const UnitLoop> loops);

// Mean and standard error of precomputed per-sample values.
MomentEstimate moment_of_values(std::span<const double> values);

}  // namespace wlp
