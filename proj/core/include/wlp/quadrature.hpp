#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wlp {

enum class QuadMethod { adaptive, fixed };

struct QuadPolicy {
    QuadMethod method = QuadMethod::adaptive;
    int fixed_nodes = 64;

    static QuadPolicy adaptive() { return {QuadMethod::adaptive, 0}; }
    static QuadPolicy fixed(int k) { return {QuadMethod::fixed, k}; }
    std::string label() const;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;  // sum to 2
};

// Nodes by Newton iteration on the Legendre recurrence; results are cached
// per order and safe to request concurrently.
const GaussLegendreRule& gauss_legendre(int order);

double fixed_gauss(const std::function<double(double)>& f, double lo, double hi, int order);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

// Gauss-Kronrod 7/15 with interval bisection. An interval is accepted when
// the Kronrod-Gauss discrepancy is below max(abs_tol_share, rel_tol * |I|).
AdaptiveResult adaptive_gk15(const std::function<double(double)>& f, double lo, double hi,
                             double abs_tol, double rel_tol, int max_depth = 48);

}  // namespace wlp
