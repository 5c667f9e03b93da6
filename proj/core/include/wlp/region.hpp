#pragma once

#include <cstdint>
#include <vector>

#include "wlp/geometry.hpp"
#include "wlp/hull.hpp"
#include "wlp/quadrature.hpp"

namespace wlp {

// Support test for one hull placed at (rho, 0, z) against the lambda-scaled
// piston geometry:
//   (a) some vertex above the piston plane:   z + z_i > lambda*a
//   (b) every vertex inside the cylinder:     (x_i+rho)^2 + y_i^2 < (lambda*r)^2
//   (c) some vertex below z=0 and outside the cap sphere
//       (FLAT: some vertex below z=0).
bool indicator(const ConvexHull& hull, double rho, double z, double lambda,
               const PistonGeometry& g);

// Smallest lambda compatible with (b): max_i sqrt((x_i+rho)^2+y_i^2) / r.
double lambda_lower_bound(const ConvexHull& hull, double rho, const PistonGeometry& g);

enum class CurveKind { const_z, sphere };

// One piece of the upper envelope U(lambda) = max_i u_i(lambda), where
//   u_i = -z_i                                        if rho_i >= lambda*R
//   u_i = min(-z_i, lambda*c0 - sqrt((lambda R)^2 - rho_i^2) - z_i) otherwise.
// For lambda >= lambda_start the sphere branch always binds, so construction
// emits sphere pieces only; the const_z kind covers the flat-head envelope.
struct EnvelopePiece {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    std::uint32_t vertex = 0;  // index into hull.vertices
    CurveKind kind = CurveKind::sphere;
};

struct RegionEnvelope {
    std::vector<EnvelopePiece> pieces;
    double lambda_start = 0.0;  // from condition (b)
    double lambda_end = 0.0;    // envelope meets the condition-(a) line
};

// Finite-R only (FLAT short-circuits in inner_area). The z-window at lambda
// is (lambda*a - z_max, U(lambda)); lambda_end is its unique zero-width point.
RegionEnvelope upper_envelope(const ConvexHull& hull, double rho, const PistonGeometry& g);

// A(rho) = integral over lambda of the window height, in closed form per
// envelope piece. Guards against a negative piecewise sum (envelope bug).
double inner_area(const ConvexHull& hull, double rho, const PistonGeometry& g);

// I = integral_0^{rho_max} rho * A(rho) drho with rho_max = r*(z_max-z_min)/a
// plus a 1e-9 relative guard. Nonnegative; zero for degenerate hulls.
double hull_weight(const ConvexHull& hull, const PistonGeometry& g,
                   const QuadPolicy& quad = QuadPolicy::adaptive());

}  // namespace wlp
