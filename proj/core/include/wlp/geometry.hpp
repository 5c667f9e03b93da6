#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wlp {

// Piston of height a inside a cylinder of radius r closed by a spherical cap
// of radius R >= r; FLAT is the planar-head limit R = infinity, kept as an
// explicit case so the sphere curves never suffer R^2 - rho^2 cancellation.
struct PistonGeometry {
    double a = 0.0;
    double r = 0.0;
    double R = 0.0;
    bool flat = false;

    static PistonGeometry capped(double a, double r, double R) {
        if (!(a > 0.0) || !(r > 0.0)) throw std::invalid_argument("piston lengths must be positive");
        if (!(R >= r)) throw std::invalid_argument("cap radius must satisfy R >= r");
        return {a, r, R, false};
    }

    static PistonGeometry flat_head(double a, double r) {
        if (!(a > 0.0) || !(r > 0.0)) throw std::invalid_argument("piston lengths must be positive");
        return {a, r, std::numeric_limits<double>::infinity(), true};
    }

    // Cap center height per unit lambda; 0 when R = r.
    double c0() const {
        if (flat) throw std::logic_error("c0 undefined for a flat head");
        return std::sqrt((R - r) * (R + r));
    }

    PistonGeometry scaled(double s) const {
        PistonGeometry g = *this;
        g.a *= s;
        g.r *= s;
        if (!flat) g.R *= s;
        return g;
    }
};

}  // namespace wlp
