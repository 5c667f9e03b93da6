#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlp/errors.hpp"
#include "wlp/quadrature.hpp"

namespace wlp {

// Run parameters shared by the CLI commands; flags mirror config-file keys
// (flat key=value). All lengths are in units of the cylinder radius.
struct RunConfig {
    std::uint64_t master_seed = 1;
    std::uint64_t n_points = 100000;
    std::uint64_t hull_count = 10000;
    std::vector<double> a_over_r;
    std::vector<double> R_over_r;
    bool flat_head = false;
    QuadPolicy quad = QuadPolicy::adaptive();
    std::string cache_path;
    std::string out_path;
    unsigned threads = 0;  // 0 = hardware concurrency

    // Throws ConfigError naming every offending field.
    void validate_counts() const;
    void validate_geometry() const;
};

// "adaptive" or "fixed:<k>".
QuadPolicy parse_quad_policy(const std::string& text);

}  // namespace wlp
