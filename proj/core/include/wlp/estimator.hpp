#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wlp/geometry.hpp"
#include "wlp/hull.hpp"
#include "wlp/quadrature.hpp"
#include "wlp/region.hpp"

namespace wlp {

struct EnergyEstimate {
    PistonGeometry geometry;
    double mean_energy = 0.0;  // hbar = c = 1, lengths in the units of g
    double std_error = 0.0;
    std::uint64_t n_hulls = 0;
    std::uint64_t points_per_loop = 0;
    QuadPolicy quad;
};

// Per-hull weights I(hull); degenerate hulls are excluded. Work is split
// across threads by index block, but weights land in a per-index buffer and
// are reduced in stream order with compensated summation, so the result is
// bit-identical for any thread count.
std::vector<double> hull_weights(std::span<const ConvexHull> hulls, const PistonGeometry& g,
                                 const QuadPolicy& quad, unsigned threads);

// E = -(1/2pi) mean(I), std error from the sample standard deviation.
EnergyEstimate estimate_energy(std::span<const ConvexHull> hulls, const PistonGeometry& g,
                               const QuadPolicy& quad = QuadPolicy::adaptive(),
                               unsigned threads = 1);

struct SweepRow {
    double a_over_r = 0.0;
    double R_over_r = 0.0;  // +inf for FLAT
    double energy_times_r = 0.0;
    double stderr_times_r = 0.0;
    double e_semiclassical = 0.0;
    double e_asymptotic = 0.0;
    double e_pfa = 0.0;
    std::uint64_t n_hulls = 0;
    std::uint64_t points_per_loop = 0;
};

// One row per (a, R) pair, FLAT appended last when requested; the same hull
// ensemble is reused across rows (common random numbers).
std::vector<SweepRow> sweep(std::span<const ConvexHull> hulls, double r,
                            std::span<const double> a_values, std::span<const double> R_values,
                            bool include_flat, const QuadPolicy& quad, unsigned threads);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, std::uint64_t seed);
std::string sweep_csv_string(std::span<const SweepRow> rows, std::uint64_t seed);

struct DeltaRow {
    double a_over_r = 0.0;   // 0 marks the periodic-orbit reference point
    double delta = 0.0;      // E + 1/(96 pi a), or the a=0 limit value
    double std_error = 0.0;
    double energy = 0.0;
};

// Residual against the semiclassical asymptote for R = r estimates, with the
// a = 0 periodic-orbit reference prepended.
std::vector<DeltaRow> delta_to_semiclassical(std::span<const EnergyEstimate> estimates);

void write_delta_csv(std::ostream& os, std::span<const DeltaRow> rows);

}  // namespace wlp
