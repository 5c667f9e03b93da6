#include "wlp/bridge.hpp"

#include <cmath>
#include <stdexcept>

namespace wlp {

UnitLoop sample_bridge(std::uint64_t n, RngStream stream) {
    if (n < 1) throw std::invalid_argument("sample_bridge: n must be >= 1");
    UnitLoop loop;
    loop.n = n;
    loop.seed_path = stream;
    loop.points.resize(n + 1);
    loop.points[0] = {0.0, 0.0, 0.0};

    NormalStream g(stream);
    const double step = std::sqrt(1.0 / static_cast<double>(n));
    Vec3 w{0.0, 0.0, 0.0};
    for (std::uint64_t k = 1; k <= n; ++k) {
        w.x += step * g.next();
        w.y += step * g.next();
        w.z += step * g.next();
        loop.points[k] = w;
    }
    // B_k = W_k - (k/n) W_n; the last point is W_n - 1.0*W_n = exact zero.
    const Vec3 wn = w;
    for (std::uint64_t k = 1; k <= n; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(n);
        loop.points[k] = loop.points[k] - t * wn;
    }
    loop.points[n] = {0.0, 0.0, 0.0};
    return loop;
}

double dz4_value(const UnitLoop& loop) {
    double zmin = 0.0, zmax = 0.0;
    for (const Vec3& p : loop.points) {
        if (p.z < zmin) zmin = p.z;
        if (p.z > zmax) zmax = p.z;
    }
    double d = zmax - zmin;
    return d * d * d * d;
}

MomentEstimate moment_of_values(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("moment: need at least 2 samples");
    MomentEstimate out;
    out.samples = values.size();
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    out.mean = (sum + comp) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        double d = v - out.mean;
        ss += d * d;
    }
    double var = ss / static_cast<double>(values.size() - 1);
    out.std_error = std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

MomentEstimate dz4_moment(std::span<const UnitLoop> loops) {
    if (loops.size() < 2) throw std::invalid_argument("dz4_moment: need at least 2 loops");
    std::vector<double> vals;
    vals.reserve(loops.size());
    for (const UnitLoop& l : loops) vals.push_back(dz4_value(l));
    return moment_of_values(vals);
}

}  // namespace wlp
