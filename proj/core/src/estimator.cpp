#include "wlp/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "wlp/errors.hpp"
#include "wlp/reference.hpp"

namespace wlp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double neumaier_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::vector<double> hull_weights(std::span<const ConvexHull> hulls, const PistonGeometry& g,
                                 const QuadPolicy& quad, unsigned threads) {
    std::vector<double> weights(hulls.size(), 0.0);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<std::size_t>(threads, std::max<std::size_t>(hulls.size(), 1));

    // Weights land in per-index slots; the later reduction walks them in
    // stream order, so the work split cannot change any result bit.
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) weights[i] = hull_weight(hulls[i], g, quad);
    };
    if (threads <= 1) {
        worker(0, hulls.size());
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        std::size_t chunk = (hulls.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(hulls.size(), lo + chunk);
            pool.emplace_back([&, lo, hi, t] {
                try {
                    worker(lo, hi);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return weights;
}

EnergyEstimate estimate_energy(std::span<const ConvexHull> hulls, const PistonGeometry& g,
                               const QuadPolicy& quad, unsigned threads) {
    std::vector<double> all = hull_weights(hulls, g, quad, threads);
    std::vector<double> used;
    used.reserve(all.size());
    std::uint64_t points = 0;
    for (std::size_t i = 0; i < hulls.size(); ++i) {
        if (hulls[i].degenerate) continue;
        if (!std::isfinite(all[i]))
            throw NumericalError(hulls[i].stream_index,
                                 "estimate_energy: non-finite weight for stream " +
                                     std::to_string(hulls[i].stream_index));
        used.push_back(all[i]);
        points = std::max<std::uint64_t>(points, hulls[i].source_n);
    }
    if (used.size() < 2)
        throw std::invalid_argument("estimate_energy: need at least 2 non-degenerate hulls");

    EnergyEstimate est;
    est.geometry = g;
    est.quad = quad;
    est.n_hulls = used.size();
    est.points_per_loop = points;
    double mean_w = neumaier_sum(used) / static_cast<double>(used.size());
    double ss = 0.0;
    for (double w : used) {
        double d = w - mean_w;
        ss += d * d;
    }
    double var = ss / static_cast<double>(used.size() - 1);
    est.mean_energy = -mean_w / kTwoPi;
    est.std_error = std::sqrt(var / static_cast<double>(used.size())) / kTwoPi;
    return est;
}

std::vector<SweepRow> sweep(std::span<const ConvexHull> hulls, double r,
                            std::span<const double> a_values, std::span<const double> R_values,
                            bool include_flat, const QuadPolicy& quad, unsigned threads) {
    std::vector<SweepRow> rows;
    for (double a_rel : a_values) {
        double a = a_rel * r;
        std::vector<PistonGeometry> geoms;
        for (double R_rel : R_values) geoms.push_back(PistonGeometry::capped(a, r, R_rel * r));
        if (include_flat) geoms.push_back(PistonGeometry::flat_head(a, r));
        for (const PistonGeometry& g : geoms) {
            EnergyEstimate est = estimate_energy(hulls, g, quad, threads);
            SweepRow row;
            row.a_over_r = a_rel;
            row.R_over_r = g.flat ? std::numeric_limits<double>::infinity() : g.R / r;
            row.energy_times_r = est.mean_energy * r;
            row.stderr_times_r = est.std_error * r;
            if (g.flat) {
                // All rim references degenerate with the cap; for a planar
                // head the parallel-plate energy is the common limit.
                double pp = parallel_plates_energy(a, r) * r;
                row.e_semiclassical = pp;
                row.e_asymptotic = pp;
                row.e_pfa = pfa_energy_flat(a, r) * r;
            } else {
                row.e_semiclassical = semiclassical_energy(a, r, g.R) * r;
                row.e_asymptotic = asymptotic_energy(a, r, g.R) * r;
                row.e_pfa = pfa_energy(a, r, g.R) * r;
            }
            row.n_hulls = est.n_hulls;
            row.points_per_loop = est.points_per_loop;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, std::uint64_t seed) {
    os << "a_over_r,R_over_r,E_times_r,stderr_times_r,E_semiclassical,E_asymptotic,E_pfa,"
          "n_hulls,points_per_loop,seed\n";
    for (const SweepRow& row : rows) {
        os << format_double(row.a_over_r) << ',' << format_double(row.R_over_r) << ','
           << format_double(row.energy_times_r) << ',' << format_double(row.stderr_times_r) << ','
           << format_double(row.e_semiclassical) << ',' << format_double(row.e_asymptotic) << ','
           << format_double(row.e_pfa) << ',' << row.n_hulls << ',' << row.points_per_loop << ','
           << seed << '\n';
    }
}

std::string sweep_csv_string(std::span<const SweepRow> rows, std::uint64_t seed) {
    std::ostringstream ss;
    write_sweep_csv(ss, rows, seed);
    return ss.str();
}

std::vector<DeltaRow> delta_to_semiclassical(std::span<const EnergyEstimate> estimates) {
    constexpr double kCoeff = 1.0 / (96.0 * M_PI);
    std::vector<DeltaRow> rows;
    double r_ref = 1.0;
    for (const EnergyEstimate& est : estimates) {
        const PistonGeometry& g = est.geometry;
        if (g.flat || std::abs(g.R - g.r) > 1e-12 * g.r)
            throw std::invalid_argument("delta_to_semiclassical: estimates must have R = r");
        r_ref = g.r;
    }
    DeltaRow zero;
    zero.a_over_r = 0.0;
    zero.delta = periodic_orbit_energy(r_ref);
    zero.std_error = 0.0;
    zero.energy = zero.delta;
    rows.push_back(zero);
    for (const EnergyEstimate& est : estimates) {
        DeltaRow row;
        row.a_over_r = est.geometry.a / est.geometry.r;
        row.delta = est.mean_energy + kCoeff / est.geometry.a;
        row.std_error = est.std_error;
        row.energy = est.mean_energy;
        rows.push_back(row);
    }
    return rows;
}

void write_delta_csv(std::ostream& os, std::span<const DeltaRow> rows) {
    os << "a_over_r,delta_E,stderr,E\n";
    for (const DeltaRow& row : rows) {
        os << format_double(row.a_over_r) << ',' << format_double(row.delta) << ','
           << format_double(row.std_error) << ',' << format_double(row.energy) << '\n';
    }
}

}  // namespace wlp
