#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "wlp/bridge.hpp"
#include "wlp/config.hpp"
#include "wlp/errors.hpp"
#include "wlp/estimator.hpp"
#include "wlp/geometry.hpp"
#include "wlp/hull.hpp"
#include "wlp/hull_cache.hpp"
#include "wlp/reference.hpp"

namespace {

struct ToolIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// stdout unless --out was given.
class Output {
  public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary);
            if (!file_) throw ToolIoError("cannot open output file '" + path_ + "'");
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (!stream())
            throw ToolIoError("write failed" + (path_.empty() ? "" : " for '" + path_ + "'"));
    }

  private:
    std::string path_;
    std::ofstream file_;
};

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Run fn(i) for i in [0, count) on t strided workers; rethrows the first
// failure after all workers stop. done counts finished indices.
template <typename Fn>
void parallel_indices(std::uint64_t count, unsigned t, std::atomic<std::uint64_t>& done,
                      std::atomic<bool>& failed, Fn&& fn) {
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t i = w; i < count && !failed.load(std::memory_order_relaxed);
                     i += t) {
                    fn(i);
                    done.fetch_add(1, std::memory_order_relaxed);
                }
            } catch (...) {
                std::scoped_lock lock(error_mu);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int run_generate(const wlp::RunConfig& cfg) {
    if (cfg.n_points < 1) throw wlp::ConfigError("invalid config fields: n_points");
    const std::string path = cfg.out_path.empty() ? cfg.cache_path : cfg.out_path;
    if (path.empty()) throw wlp::ConfigError("generate needs --out for the hull cache path");
    if (cfg.hull_count == 0) std::cerr << "warning: hull_count is 0, writing an empty cache\n";

    const std::uint64_t count = cfg.hull_count;
    std::vector<wlp::ConvexHull> hulls(count);
    std::vector<double> vertex_counts(count, 0.0), face_counts(count, 0.0);
    std::atomic<std::uint64_t> done{0};
    std::atomic<bool> failed{false};

    unsigned t = worker_count(cfg.threads);
    if (count > 0 && t > count) t = static_cast<unsigned>(count);
    const auto started = std::chrono::steady_clock::now();

    std::thread monitor([&] {
        std::uint64_t last_decile = 0;
        while (!failed.load(std::memory_order_relaxed) && done.load() < count) {
            std::this_thread::sleep_for(std::chrono::milliseconds(500));
            std::uint64_t d = count ? done.load() * 10 / count : 10;
            if (d > last_decile) {
                last_decile = d;
                std::cerr << "generate: " << done.load() << "/" << count << " hulls\n";
            }
        }
    });
    double elapsed = 0.0;
    try {
        if (count > 0)
            parallel_indices(count, t, done, failed, [&](std::uint64_t i) {
                wlp::UnitLoop loop = wlp::sample_bridge(cfg.n_points, {cfg.master_seed, i});
                wlp::ConvexHull h = wlp::convex_hull(loop);
                vertex_counts[i] = static_cast<double>(h.vertices.size());
                face_counts[i] = static_cast<double>(h.faces.size());
                // Faces are not persisted and dominate memory at this scale.
                h.faces.clear();
                h.faces.shrink_to_fit();
                hulls[i] = std::move(h);
            });
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    } catch (...) {
        failed.store(true);
        monitor.join();
        throw;
    }
    failed.store(true);  // stop the monitor
    monitor.join();

    wlp::save_hulls(hulls, path, cfg.master_seed);

    std::uint64_t degenerate = 0;
    for (const auto& h : hulls)
        if (h.degenerate) ++degenerate;
    std::cout.precision(6);
    std::cout << "hulls " << count << "  points-per-loop " << cfg.n_points << "  seed "
              << cfg.master_seed << "\n";
    if (count >= 2) {
        auto vs = wlp::moment_of_values(vertex_counts);
        auto fs = wlp::moment_of_values(face_counts);
        std::cout << "vertices  mean " << vs.mean << "  se " << vs.std_error << "\n";
        std::cout << "faces     mean " << fs.mean << "  se " << fs.std_error << "\n";
    }
    std::cout << "degenerate " << degenerate << "\n";
    std::cout << "generation " << elapsed << " s\n";
    std::error_code ec;
    auto bytes = std::filesystem::file_size(path, ec);
    std::cout << "wrote " << path;
    if (!ec) std::cout << "  (" << bytes << " bytes)";
    std::cout << "\n";
    if (!std::cout) throw ToolIoError("write failed on stdout");
    return wlp::kExitOk;
}

wlp::HullCacheData load_cache_checked(const wlp::RunConfig& cfg, bool n_explicit) {
    if (cfg.cache_path.empty()) throw wlp::ConfigError("missing hull cache path (--cache)");
    wlp::HullCacheData cache = wlp::load_hulls(cfg.cache_path);
    if (n_explicit && !cache.hulls.empty() && cache.hulls.front().source_n != cfg.n_points)
        throw wlp::ConfigError("cache/config mismatch: cache built with n=" +
                               std::to_string(cache.hulls.front().source_n) +
                               ", config asks for n=" + std::to_string(cfg.n_points));
    return cache;
}

int run_energy(const wlp::RunConfig& cfg, bool n_explicit) {
    cfg.validate_geometry();
    if (cfg.a_over_r.size() != 1)
        throw wlp::ConfigError("energy expects exactly one a_over_r; use sweep for grids");
    if (cfg.flat_head && !cfg.R_over_r.empty())
        throw wlp::ConfigError("energy takes either one R_over_r or --flat-head, not both");
    if (!cfg.flat_head && cfg.R_over_r.size() != 1)
        throw wlp::ConfigError("energy expects exactly one R_over_r or --flat-head");

    wlp::HullCacheData cache = load_cache_checked(cfg, n_explicit);
    std::cerr << "energy: " << cache.hulls.size() << " hulls, quad " << cfg.quad.label() << "\n";
    auto rows = wlp::sweep(cache.hulls, 1.0, cfg.a_over_r, cfg.R_over_r, cfg.flat_head, cfg.quad,
                           cfg.threads);
    Output out(cfg.out_path);
    wlp::write_sweep_csv(out.stream(), rows, cache.master_seed);
    out.finish();
    return wlp::kExitOk;
}

int run_sweep(const wlp::RunConfig& cfg, bool n_explicit) {
    cfg.validate_geometry();
    wlp::HullCacheData cache = load_cache_checked(cfg, n_explicit);
    const std::size_t n_geom = cfg.a_over_r.size() * (cfg.R_over_r.size() + (cfg.flat_head ? 1 : 0));
    std::cerr << "sweep: " << n_geom << " geometries x " << cache.hulls.size() << " hulls, quad "
              << cfg.quad.label() << "\n";
    auto rows = wlp::sweep(cache.hulls, 1.0, cfg.a_over_r, cfg.R_over_r, cfg.flat_head, cfg.quad,
                           cfg.threads);
    Output out(cfg.out_path);
    wlp::write_sweep_csv(out.stream(), rows, cache.master_seed);
    out.finish();
    return wlp::kExitOk;
}

int run_moments(const wlp::RunConfig& cfg) {
    if (cfg.n_points < 1) throw wlp::ConfigError("invalid config fields: n_points");
    if (cfg.hull_count < 2) throw wlp::ConfigError("moments needs at least 2 loops (--hulls)");

    const std::uint64_t count = cfg.hull_count;
    std::vector<double> values(count, 0.0);
    std::atomic<std::uint64_t> done{0};
    std::atomic<bool> failed{false};
    unsigned t = worker_count(cfg.threads);
    if (t > count) t = static_cast<unsigned>(count);
    parallel_indices(count, t, done, failed, [&](std::uint64_t i) {
        values[i] = wlp::dz4_value(wlp::sample_bridge(cfg.n_points, {cfg.master_seed, i}));
    });
    wlp::MomentEstimate est = wlp::moment_of_values(values);

    const double exact = std::pow(std::numbers::pi, 4) / 30.0;
    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    os.precision(10);
    os << "loops " << count << "  points-per-loop " << cfg.n_points << "  seed "
       << cfg.master_seed << "\n";
    os << "dz4 mean " << est.mean << "  se " << est.std_error << "\n";
    os << "continuum value " << exact << "\n";
    os << "z-score " << (est.mean - exact) / est.std_error << "\n";
    os << "relative deviation " << est.mean / exact - 1.0 << "\n";
    out.finish();
    return wlp::kExitOk;
}

int run_reference(const wlp::RunConfig& cfg, wlp::BoundaryCondition bc) {
    cfg.validate_geometry();
    if (cfg.a_over_r.size() != 1)
        throw wlp::ConfigError("reference expects exactly one a_over_r");
    if (cfg.flat_head && !cfg.R_over_r.empty())
        throw wlp::ConfigError("reference takes either one R_over_r or --flat-head, not both");
    if (!cfg.flat_head && cfg.R_over_r.size() != 1)
        throw wlp::ConfigError("reference expects exactly one R_over_r or --flat-head");

    const double a = cfg.a_over_r.front();  // lengths in units of r
    const char* bc_name = bc == wlp::BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    os.precision(10);
    if (cfg.flat_head) {
        os << "geometry a/r " << a << "  head FLAT\n";
        os << "parallel_plates_energy " << wlp::parallel_plates_energy(a, 1.0) << "\n";
        os << "pfa_energy " << wlp::pfa_energy_flat(a, 1.0) << "\n";
        os << "(cap formulas need finite R)\n";
    } else {
        const double R = cfg.R_over_r.front();
        os << "geometry a/r " << a << "  R/r " << R << "  bc " << bc_name << "\n";
        os << "parallel_plates_energy " << wlp::parallel_plates_energy(a, 1.0) << "\n";
        os << "asymptotic_energy " << wlp::asymptotic_energy(a, 1.0, R) << "\n";
        os << "fitted_asymptotic_energy " << wlp::fitted_asymptotic_energy(a, 1.0, R) << "\n";
        os << "semiclassical_force " << wlp::semiclassical_force(a, 1.0, R, bc) << "\n";
        os << "semiclassical_force_integral " << wlp::semiclassical_force_integral(a, 1.0, R, bc)
           << "\n";
        os << "semiclassical_energy " << wlp::semiclassical_energy(a, 1.0, R) << "\n";
        os << "pfa_energy " << wlp::pfa_energy(a, 1.0, R) << "\n";
        os << "periodic_orbit_energy " << wlp::periodic_orbit_energy(R) << "\n";
    }
    out.finish();
    return wlp::kExitOk;
}

int run_compare(const wlp::RunConfig& cfg, bool n_explicit) {
    if (cfg.a_over_r.empty()) throw wlp::ConfigError("compare needs a_over_r values");
    for (double a : cfg.a_over_r)
        if (!(a > 0.0)) throw wlp::ConfigError("invalid config fields: a_over_r");
    for (double R : cfg.R_over_r)
        if (R != 1.0)
            throw wlp::ConfigError("compare is defined at R = r; drop R_over_r or set it to 1");

    wlp::HullCacheData cache = load_cache_checked(cfg, n_explicit);
    std::vector<wlp::EnergyEstimate> estimates;
    estimates.reserve(cfg.a_over_r.size());
    for (double a : cfg.a_over_r) {
        estimates.push_back(wlp::estimate_energy(cache.hulls, wlp::PistonGeometry::capped(a, 1.0, 1.0),
                                                 cfg.quad, cfg.threads));
        std::cerr << "compare: a/r " << a << " done\n";
    }
    auto rows = wlp::delta_to_semiclassical(estimates);
    Output out(cfg.out_path);
    wlp::write_delta_csv(out.stream(), rows);
    out.finish();
    return wlp::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    wlp::RunConfig cfg;
    std::string quad_text = "adaptive";
    std::string bc_text = "dirichlet";

    CLI::App app{"Worldline Monte Carlo for Casimir piston energies"};
    app.fallthrough();
    app.set_config("--config", "", "Flat key=value config file; flags override it");

    app.add_option("--seed", cfg.master_seed, "Master RNG seed")->capture_default_str();
    auto* n_opt =
        app.add_option("--n-points", cfg.n_points, "Points per unit loop")->capture_default_str();
    app.add_option("--hulls", cfg.hull_count, "Number of loops / hulls")->capture_default_str();
    app.add_option("--a-over-r", cfg.a_over_r, "Piston height(s) in units of r")->delimiter(',');
    app.add_option("--R-over-r", cfg.R_over_r, "Cap radius(es) in units of r, each >= 1")
        ->delimiter(',');
    app.add_flag("--flat-head", cfg.flat_head, "Planar piston head (R = infinity)");
    app.add_option("--quad", quad_text, "rho quadrature: adaptive or fixed:<k>")
        ->capture_default_str();
    app.add_option("--cache", cfg.cache_path, "Hull cache file to read");
    app.add_option("--out", cfg.out_path, "Output path (default stdout; generate: cache path)");
    app.add_option("--threads", cfg.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();

    auto* generate = app.add_subcommand("generate", "Sample loops, hull them, write the cache");
    auto* energy = app.add_subcommand("energy", "Energy of one geometry from a hull cache (CSV)");
    auto* sweepc = app.add_subcommand("sweep", "Energies over an (a, R) grid from one cache (CSV)");
    auto* moments = app.add_subcommand("moments", "Axial extent moment of unit loops");
    auto* reference = app.add_subcommand("reference", "Closed-form reference energies at one point");
    auto* compare = app.add_subcommand("compare", "Residual against the semiclassical asymptote (CSV)");
    reference->add_option("--bc", bc_text, "Boundary condition: dirichlet or neumann")
        ->capture_default_str();
    for (auto* sub : {generate, energy, sweepc, moments, reference, compare}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int rc = app.exit(e);
            return rc == 0 ? wlp::kExitOk : wlp::kExitConfigError;
        }
        cfg.quad = wlp::parse_quad_policy(quad_text);

        if (app.got_subcommand(generate)) return run_generate(cfg);
        if (app.got_subcommand(energy)) return run_energy(cfg, n_opt->count() > 0);
        if (app.got_subcommand(sweepc)) return run_sweep(cfg, n_opt->count() > 0);
        if (app.got_subcommand(moments)) return run_moments(cfg);
        if (app.got_subcommand(reference)) {
            wlp::BoundaryCondition bc;
            if (bc_text == "dirichlet" || bc_text == "D" || bc_text == "d")
                bc = wlp::BoundaryCondition::dirichlet;
            else if (bc_text == "neumann" || bc_text == "N" || bc_text == "n")
                bc = wlp::BoundaryCondition::neumann;
            else
                throw wlp::ConfigError("bc: expected 'dirichlet' or 'neumann', got '" + bc_text +
                                       "'");
            return run_reference(cfg, bc);
        }
        if (app.got_subcommand(compare)) return run_compare(cfg, n_opt->count() > 0);
        return wlp::kExitConfigError;
    } catch (const wlp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return wlp::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return wlp::kExitConfigError;
    } catch (const wlp::CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return wlp::kExitIoError;
    } catch (const ToolIoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return wlp::kExitIoError;
    } catch (const wlp::NumericalError& e) {
        std::cerr << "numerical error (loop stream " << e.stream_index << "): " << e.what()
                  << "\n";
        return wlp::kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wlp::kExitNumericalError;
    }
}
