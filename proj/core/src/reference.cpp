#include "wlp/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "wlp/quadrature.hpp"

namespace wlp {

namespace {

void check_lengths(double a, double r) {
    if (!(a > 0.0) || !(r > 0.0))
        throw std::invalid_argument("reference: lengths must be positive");
}

void check_cap(double a, double r, double R) {
    check_lengths(a, r);
    if (!(R >= r)) throw std::invalid_argument("reference: cap radius must satisfy R >= r");
}

double cap_offset(double r, double R) { return std::sqrt((R - r) * (R + r)); }

// Axial gap between piston and cap, with the sqrt difference rearranged so
// large R does not cancel: sqrt(R^2-rho^2) - c0 = (r^2-rho^2)/(sqrt(R^2-rho^2)+c0).
// The quotient is 0/0 at rho = r = R; the gap limit there is a.
double axial_gap(double a, double r, double R, double rho) {
    double c0 = cap_offset(r, R);
    double den = std::sqrt(R * R - rho * rho) + c0;
    if (!(den > 0.0)) return a;
    return a + (r - rho) * (r + rho) / den;
}

}  // namespace

double parallel_plates_energy(double a, double r) {
    check_lengths(a, r);
    return -std::pow(M_PI, 3) * r * r / (1440.0 * a * a * a);
}

double asymptotic_energy(double a, double r, double R) {
    check_cap(a, r, R);
    double c0 = cap_offset(r, R);
    return -(M_PI * M_PI / 2880.0) * (c0 / (a * a) + 1.0 / a);
}

double fitted_asymptotic_energy(double a, double r, double R) {
    check_cap(a, r, R);
    double c0 = cap_offset(r, R);
    return -(0.00395 * c0 / (a * a) + 0.00326 / a);
}

double semiclassical_force(double a, double r, double R, BoundaryCondition bc) {
    check_cap(a, r, R);
    double c0 = cap_offset(r, R);
    double mag = (2.0 * c0 / a + 1.0) / (96.0 * M_PI * a * a);
    return bc == BoundaryCondition::dirichlet ? -mag : mag;
}

double semiclassical_force_integral(double a, double r, double R, BoundaryCondition bc) {
    check_cap(a, r, R);
    auto f = [&](double rho) {
        double d = axial_gap(a, r, R, rho);
        return rho / (d * d * d * d);
    };
    AdaptiveResult res = adaptive_gk15(f, 0.0, r, 1e-12, 1e-10);
    double mag = res.value / (16.0 * M_PI);
    return bc == BoundaryCondition::dirichlet ? -mag : mag;
}

double semiclassical_energy(double a, double r, double R) {
    check_cap(a, r, R);
    double c0 = cap_offset(r, R);
    return -(c0 / (a * a) + 1.0 / a) / (96.0 * M_PI);
}

double periodic_orbit_energy(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("periodic_orbit_energy: R must be positive");
    // S = sum_{m>=1} sum_{n>=2m+1} C cos(m pi/n) / (n^4 sin^2(m pi/n)),
    // summed shell-wise in n (m <= (n-1)/2). Shells fall off as C/(6 n^2),
    // so the truncated remainder is restored with an Euler-Maclaurin tail
    // from g(n) = C/(6 n^2) - C/(pi n^3) + O(n^-4); |tail error| < 1e-9.
    const double C = 30.0 * std::sqrt(2.0) / M_PI;
    const long N = 4000;
    double S = 0.0;
    for (long n = 3; n <= N; ++n) {
        double shell = 0.0;
        long m_max = (n - 1) / 2;
        for (long m = 1; m <= m_max; ++m) {
            double phase = M_PI * static_cast<double>(m) / static_cast<double>(n);
            double s = std::sin(phase);
            shell += std::cos(phase) / (s * s);
        }
        double n4 = static_cast<double>(n) * n * n * n;
        S += C * shell / n4;
    }
    const double iN = 1.0 / static_cast<double>(N);
    double tail2 = iN - 0.5 * iN * iN + iN * iN * iN / 6.0;
    double tail3 = 0.5 * iN * iN - 0.5 * iN * iN * iN + 0.25 * iN * iN * iN * iN;
    S += C / 6.0 * tail2 - C / M_PI * tail3;
    return M_PI / (128.0 * R) * (1.0 + M_PI * M_PI / 45.0 + S);
}

double pfa_energy(double a, double r, double R) {
    check_cap(a, r, R);
    auto f = [&](double rho) {
        double d = axial_gap(a, r, R, rho);
        return rho / (d * d * d);
    };
    AdaptiveResult res = adaptive_gk15(f, 0.0, r, 1e-12, 1e-10);
    return -(M_PI * M_PI / 1440.0) * 2.0 * M_PI * res.value;
}

double pfa_energy_flat(double a, double r) { return parallel_plates_energy(a, r); }

}  // namespace wlp
