#include "wlp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wlp {

std::string QuadPolicy::label() const {
    if (method == QuadMethod::adaptive) return "adaptive";
    return "fixed:" + std::to_string(fixed_nodes);
}

namespace {

GaussLegendreRule compute_gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double n = order;
    for (int i = 0; i < (order + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n(x) = 0.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;  // roots found from the positive end; store ascending
        rule.weights[i] = w;
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        // Central node of odd rules is exactly zero.
        rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

double fixed_gauss(const std::function<double(double)>& f, double lo, double hi, int order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace {

// QUADPACK 7/15 Gauss-Kronrod abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Gk15 {
    double kronrod;
    double gauss;
};

Gk15 gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double fc = f(mid);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = half * kXgk[j];
        double fsum = f(mid - x) + f(mid + x);
        k += kWgk[j] * fsum;
        if (j % 2 == 1) g += kWg[j / 2] * fsum;
    }
    return {k * half, g * half};
}

struct Segment {
    double lo, hi;
    int depth;
};

}  // namespace

AdaptiveResult adaptive_gk15(const std::function<double(double)>& f, double lo, double hi,
                             double abs_tol, double rel_tol, int max_depth) {
    AdaptiveResult res;
    if (!(hi > lo)) return res;
    std::vector<Segment> stack{{lo, hi, 0}};
    while (!stack.empty()) {
        Segment s = stack.back();
        stack.pop_back();
        Gk15 q = gk15(f, s.lo, s.hi);
        res.evaluations += 15;
        double err = std::abs(q.kronrod - q.gauss);
        // Split the absolute budget in proportion to interval length.
        double budget = abs_tol * (s.hi - s.lo) / (hi - lo);
        double tol = std::max(budget, rel_tol * std::abs(q.kronrod));
        if (err <= tol || s.depth >= max_depth) {
            if (err > tol) res.converged = false;
            res.value += q.kronrod;
            res.error += err;
        } else {
            double mid = 0.5 * (s.lo + s.hi);
            stack.push_back({s.lo, mid, s.depth + 1});
            stack.push_back({mid, s.hi, s.depth + 1});
        }
    }
    return res;
}

}  // namespace wlp
