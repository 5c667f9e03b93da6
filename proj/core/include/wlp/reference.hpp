#pragma once

namespace wlp {

enum class BoundaryCondition { dirichlet, neumann };

// Dirichlet scalar between parallel discs of area pi r^2, edge corrections
// neglected: E = -pi^3 r^2 / (1440 a^3).
double parallel_plates_energy(double a, double r);

// Heuristic small-a estimate E = -(pi^2/2880) (sqrt(R^2-r^2)/a^2 + 1/a).
double asymptotic_energy(double a, double r, double R);

// Fit to the numerics: E = -(0.00395 sqrt(R^2-r^2)/a^2 + 0.00326/a).
double fitted_asymptotic_energy(double a, double r, double R);

// Short reflected closed paths near the rim: F = -+ (1/(96 pi a^2)) (2 sqrt(R^2-r^2)/a + 1),
// minus for Dirichlet. The unexpanded integral form is exposed separately.
double semiclassical_force(double a, double r, double R, BoundaryCondition bc);
double semiclassical_force_integral(double a, double r, double R, BoundaryCondition bc);

// Antiderivative of the semiclassical force with E(a->inf) = 0; pairs with
// the estimator's delta table and the CSV reference column.
double semiclassical_energy(double a, double r, double R);

// Piston-independent periodic-orbit energy, E(R) = (pi/128R)(1 + pi^2/45 + S)
// with the double series over (m, n >= 2m+1) summed shell-wise in n plus an
// Euler-Maclaurin tail; absolute tail bound below 1e-9.
double periodic_orbit_energy(double R);

// Piston-based proximity force approximation: parallel-plate energy density
// integrated over the local axial gap d(rho) = a + sqrt(R^2-rho^2) - sqrt(R^2-r^2).
double pfa_energy(double a, double r, double R);
double pfa_energy_flat(double a, double r);  // d = a, equals parallel_plates_energy

}  // namespace wlp
