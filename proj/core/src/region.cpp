#include "wlp/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wlp/errors.hpp"

namespace wlp {

bool indicator(const ConvexHull& hull, double rho, double z, double lambda,
               const PistonGeometry& g) {
    if (hull.vertices.empty()) return false;
    bool above_piston = false;
    bool pierces_cap = false;
    const double lam_r2 = lambda * g.r * lambda * g.r;
    const double lam_c0 = g.flat ? 0.0 : lambda * g.c0();
    const double lam_R2 = g.flat ? 0.0 : lambda * g.R * lambda * g.R;
    for (const Vec3& v : hull.vertices) {
        double zz = z + v.z;
        if (zz > lambda * g.a) above_piston = true;
        double dx = v.x + rho;
        double rr = dx * dx + v.y * v.y;
        if (!(rr < lam_r2)) return false;  // (b) must hold for every vertex
        if (zz < 0.0) {
            if (g.flat) {
                pierces_cap = true;
            } else {
                double dc = zz - lam_c0;
                if (rr + dc * dc > lam_R2) pierces_cap = true;
            }
        }
    }
    return above_piston && pierces_cap;
}

double lambda_lower_bound(const ConvexHull& hull, double rho, const PistonGeometry& g) {
    if (rho < 0.0) throw std::invalid_argument("lambda_lower_bound: rho must be >= 0");
    double max_rr = 0.0;
    for (const Vec3& v : hull.vertices) {
        double dx = v.x + rho;
        max_rr = std::max(max_rr, dx * dx + v.y * v.y);
    }
    return std::sqrt(max_rr) / g.r;
}

namespace {

// Candidate curve for the envelope: one hull vertex at squared cylinder
// radius rho2 (depends on the hull placement rho) and height z. rho_i caches
// sqrt(rho2) so radicals can use the product form (x - rho_i)(x + rho_i);
// the direct x^2 - rho2 loses ~ulp(rho2)/(2 s) near s = 0, which is most of
// the window height for sliver pieces at the cusp.
struct Candidate {
    double rho2;
    double rho_i;
    double z;
    std::uint32_t vertex;
};

struct EnvelopeScratch {
    std::vector<Candidate> cand;
};

thread_local EnvelopeScratch tls_scratch;

// u_i(lambda) + z_i in the cancellation-free form
// (rho2 - (lambda r)^2) / (lambda c0 + sqrt((lambda R)^2 - rho2)),
// identical to lambda c0 - sqrt((lambda R)^2 - rho2) because c0^2 = R^2 - r^2.
// Both differences of squares are taken in product form: near lambda r ~
// rho_i the subtraction rho_i - lambda r is exact (Sterbenz) where the
// squared version is pure rounding noise.
double sphere_q(double lambda, double rho_i, double r, double R, double c0) {
    double lr = lambda * r;
    double num = (rho_i - lr) * (rho_i + lr);
    double lR = lambda * R;
    double d = lR - rho_i;
    double s = d > 0.0 ? std::sqrt(d * (lR + rho_i)) : 0.0;
    double den = lambda * c0 + s;
    return den > 0.0 ? num / den : 0.0;
}

// Survivors of the dominance rule (rho2 bigger and z smaller wins for every
// lambda), sorted by descending rho2 with strictly decreasing z.
void prune_candidates(const ConvexHull& hull, double rho, std::vector<Candidate>& cand) {
    cand.clear();
    cand.reserve(hull.vertices.size());
    for (std::uint32_t i = 0; i < hull.vertices.size(); ++i) {
        const Vec3& v = hull.vertices[i];
        double dx = v.x + rho;
        double rr = dx * dx + v.y * v.y;
        cand.push_back({rr, std::sqrt(rr), v.z, i});
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
        if (a.rho2 != b.rho2) return a.rho2 > b.rho2;
        return a.z < b.z;
    });
    std::size_t kept = 0;
    double min_z = std::numeric_limits<double>::infinity();
    for (const Candidate& c : cand) {
        if (c.z < min_z) {
            min_z = c.z;
            cand[kept++] = c;
        }
    }
    cand.resize(kept);
}

}  // namespace

RegionEnvelope upper_envelope(const ConvexHull& hull, double rho, const PistonGeometry& g) {
    if (g.flat) throw std::invalid_argument("upper_envelope: flat head has no sphere envelope");
    if (rho < 0.0) throw std::invalid_argument("upper_envelope: rho must be >= 0");

    RegionEnvelope env;
    if (hull.vertices.empty()) return env;

    const double r = g.r, R = g.R, c0 = g.c0(), a = g.a;
    const double z_max = hull.z_max;
    const double dz = hull.z_max - hull.z_min;

    std::vector<Candidate>& cand = tls_scratch.cand;
    prune_candidates(hull, rho, cand);

    const double lam_b = std::sqrt(cand.front().rho2) / r;
    env.lambda_start = env.lambda_end = lam_b;
    if (!(dz > 0.0)) return env;
    double lam_hi = dz / a;
    if (!(lam_b < lam_hi)) return env;

    auto window = [&](double lam) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Candidate& c : cand)
            best = std::max(best, sphere_q(lam, c.rho_i, r, R, c0) - c.z);
        return best - lam * a + z_max;
    };
    auto argmax_at = [&](double lam) {
        std::size_t best = 0;
        double bu = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cand.size(); ++i) {
            double u = sphere_q(lam, cand[i].rho_i, r, R, c0) - cand[i].z;
            if (u > bu) {
                bu = u;
                best = i;
            }
        }
        return best;
    };

    if (!(window(lam_b) > 0.0)) return env;

    // The window height is strictly decreasing in lambda, so its zero is
    // unique. W(dz/a) <= 0 always since U <= -z_min. Bisect until the
    // bracket has no interior double: a sliver's whole support can be a few
    // hundred ulp wide, so any fixed relative stop leaves an end-cap error
    // quadratic in the overshoot but large against the sliver area.
    double lo = lam_b, hi = lam_hi;
    for (int it = 0; it < 64 && window(hi) > 0.0; ++it)
        hi *= 1.0 + 1e-12;  // guard against roundoff at the bracket end
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi)) break;
        if (window(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double lam_end = hi;
    env.lambda_end = lam_end;

    // March the argmax curve from lam_b to lam_end. u_j - u_cur is strictly
    // increasing in lambda exactly when rho2_j < rho2_cur, so with the
    // survivors sorted by descending rho2 only a later candidate can take
    // over and each one contributes at most one piece.
    std::size_t cur = argmax_at(lam_b);
    double lam_cur = lam_b;
    while (true) {
        if (env.pieces.size() > cand.size())
            throw std::logic_error("upper_envelope: piece count exceeds candidate bound");
        double ev = lam_end;
        std::size_t ev_j = cand.size();
        const Candidate& cc = cand[cur];
        for (std::size_t j = cur + 1; j < cand.size(); ++j) {
            const Candidate& cj = cand[j];
            double d = cj.z - cc.z;  // s_cur - s_j at the crossing; < 0 on the staircase
            double q = (cj.rho2 - cc.rho2) / d;
            double s_cur = 0.5 * (d + q);
            double s_j = s_cur - d;
            if (s_cur < 0.0 || s_j < 0.0) continue;  // the curves never meet for lambda > lam_b
            double lam = std::sqrt(s_cur * s_cur + cc.rho2) / R;
            if (!(lam < ev * (1.0 + 1e-12))) continue;
            // Bisection polish of the closed-form root.
            double blo = std::max(lam_cur, lam * (1.0 - 1e-8));
            double bhi = std::min(lam_end, lam * (1.0 + 1e-8));
            auto diff = [&](double l) {
                return (sphere_q(l, cj.rho_i, r, R, c0) - cj.z) -
                       (sphere_q(l, cc.rho_i, r, R, c0) - cc.z);
            };
            if (blo < bhi && diff(blo) < 0.0 && diff(bhi) > 0.0) {
                for (int it = 0; it < 60 && (bhi - blo) > 1e-12 * bhi; ++it) {
                    double mid = 0.5 * (blo + bhi);
                    if (diff(mid) < 0.0)
                        blo = mid;
                    else
                        bhi = mid;
                }
                lam = 0.5 * (blo + bhi);
            }
            if (lam > lam_cur && lam < ev) {
                ev = lam;
                ev_j = j;
            }
        }
        env.pieces.push_back({lam_cur, ev, cc.vertex, CurveKind::sphere});
        if (ev_j == cand.size() || ev >= lam_end) break;
        lam_cur = ev;
        cur = ev_j;
    }
    return env;
}

namespace {

// Integral over one sphere piece of (lambda c0 - s_j(lambda)) using
// G(lambda) = (lambda/2) q(lambda) + (rho2/(2R)) ln(lambda R + s), with the
// log difference taken as a single ratio to preserve relative accuracy for
// large R.
// y - asinh(y); the direct difference cancels below y ~ 0.1, so use the
// series there.
double y_minus_asinh(double y) {
    if (y > 0.125) return y - std::asinh(y);
    double u = y * y;
    double b = -0.011551339285714286;
    b = 0.013964843750 + u * b;
    b = -0.017352764423076923 + u * b;
    b = 0.022372159090909091 + u * b;
    b = -0.030381944444444444 + u * b;
    b = 0.044642857142857144 + u * b;
    b = -0.075 + u * b;
    b = 0.16666666666666666 + u * b;
    return y * u * b;
}

double sphere_piece_integral(double lo, double hi, double rho2, double rho_i, double zj,
                             double z_max, const PistonGeometry& g) {
    const double R = g.R, c0 = g.c0();
    double dl = hi - lo;
    if (!(dl > 0.0)) return 0.0;
    auto s_of = [&](double lam) {
        double d = lam * R - rho_i;
        return d > 0.0 ? std::sqrt(d * (lam * R + rho_i)) : 0.0;
    };
    double s_lo = s_of(lo), s_hi = s_of(hi);
    double sum = hi + lo;
    double base = (z_max - zj) * dl + 0.5 * (c0 - g.a) * sum * dl;
    // integral of s = sqrt((lambda R)^2 - rho2) via the asinh substitution,
    // arranged so every factor is an explicit multiple of dl. A sliver piece
    // at the sqrt cusp (s_lo ~ 0, lambda R ~ sqrt(rho2)) then loses nothing
    // to cancellation, unlike the difference of the two closed-form
    // primitives, which is catastrophic there.
    double int_s;
    if (rho2 <= 0.0) {
        int_s = 0.5 * R * sum * dl;
    } else {
        double cross = lo * s_hi + hi * s_lo;
        if (cross <= 0.0) {
            int_s = 0.0;  // s vanishes across the piece
        } else {
            double y = R * sum * dl / cross;  // sinh of the asinh-variable span
            double cm1 = (R * R * lo * dl + s_lo * (s_lo + s_hi)) / rho2;
            int_s = rho2 / (2.0 * R) * (y * cm1 + y_minus_asinh(y));
        }
    }
    return base - int_s;
}

}  // namespace

double inner_area(const ConvexHull& hull, double rho, const PistonGeometry& g) {
    if (hull.vertices.empty()) return 0.0;
    const double dz = hull.z_max - hull.z_min;
    if (!(dz > 0.0)) return 0.0;

    if (g.flat) {
        double lam_b = lambda_lower_bound(hull, rho, g);
        double lam_hi = dz / g.a;
        if (lam_b >= lam_hi) return 0.0;
        double w = lam_hi - lam_b;
        return 0.5 * g.a * w * w;
    }

    RegionEnvelope env = upper_envelope(hull, rho, g);
    double area = 0.0, abs_area = 0.0;
    for (const EnvelopePiece& p : env.pieces) {
        const Vec3& v = hull.vertices[p.vertex];
        double dx = v.x + rho;
        double rho2 = dx * dx + v.y * v.y;
        double piece = sphere_piece_integral(p.lambda_lo, p.lambda_hi, rho2, std::sqrt(rho2),
                                             v.z, hull.z_max, g);
        area += piece;
        abs_area += std::abs(piece);
    }
    if (area < -1e-12 * std::max(1.0, abs_area))
        throw std::logic_error("inner_area: negative piecewise sum, envelope is inconsistent");
    return std::max(area, 0.0);
}

double hull_weight(const ConvexHull& hull, const PistonGeometry& g, const QuadPolicy& quad) {
    if (hull.degenerate || hull.vertices.empty()) return 0.0;
    const double dz = hull.z_max - hull.z_min;
    if (!(dz > 0.0)) return 0.0;
    const double rho_max = g.r * dz / g.a * (1.0 + 1e-9);
    auto f = [&](double rho) { return rho * inner_area(hull, rho, g); };

    if (quad.method == QuadMethod::fixed) return fixed_gauss(f, 0.0, rho_max, quad.fixed_nodes);

    const double abs_scale = rho_max * rho_max * dz;
    AdaptiveResult res = adaptive_gk15(f, 0.0, rho_max, 1e-10 * abs_scale, 1e-6);
    if (!res.converged)
        throw NumericalError(hull.stream_index,
                             "hull_weight: adaptive quadrature did not converge for stream " +
                                 std::to_string(hull.stream_index));
    if (!std::isfinite(res.value))
        throw NumericalError(hull.stream_index, "hull_weight: non-finite weight for stream " +
                                                    std::to_string(hull.stream_index));
    return res.value;
}

}  // namespace wlp
