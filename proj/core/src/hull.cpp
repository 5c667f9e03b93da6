#include "wlp/hull.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace wlp {

namespace {

struct Face {
    std::uint32_t v[3];
    int nb[3];  // neighbor across edge (v[i], v[(i+1)%3])
    Vec3 n;     // outward unit normal
    double off; // dot(n, plane point)
    std::vector<std::uint32_t> outside;
    std::uint32_t far_pt = 0;
    double far_d = 0.0;
    bool alive = true;
};

double dist_to(const Face& f, const Vec3& p) { return dot(f.n, p) - f.off; }

Face make_face(std::span<const Vec3> pts, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    Face f;
    f.v[0] = a;
    f.v[1] = b;
    f.v[2] = c;
    f.nb[0] = f.nb[1] = f.nb[2] = -1;
    Vec3 nr = cross(pts[b] - pts[a], pts[c] - pts[a]);
    double ln = norm(nr);
    // Slivers with |n| ~ 0 keep a zero normal; they never win a visibility
    // test and get removed when a neighbor is refined.
    f.n = ln > 0.0 ? (1.0 / ln) * nr : Vec3{0.0, 0.0, 0.0};
    f.off = dot(f.n, pts[a]);
    return f;
}

}  // namespace

ConvexHull convex_hull_of_points(std::span<const Vec3> points, std::uint64_t source_n,
                                 std::uint64_t stream_index) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
    if (points.size() >= std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("convex_hull: too many points");

    ConvexHull hull;
    hull.source_n = source_n;
    hull.stream_index = stream_index;
    hull.z_min = hull.z_max = points[0].z;
    double scale = 0.0;
    for (const Vec3& p : points) {
        scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
        hull.z_min = std::min(hull.z_min, p.z);
        hull.z_max = std::max(hull.z_max, p.z);
    }
    const double eps = 1e-12 * std::max(scale, 1e-300);
    const std::uint32_t np = static_cast<std::uint32_t>(points.size());

    // Initial simplex: extreme pair, then furthest from line, then from plane.
    std::uint32_t ex[6] = {0, 0, 0, 0, 0, 0};
    for (std::uint32_t i = 1; i < np; ++i) {
        if (points[i].x < points[ex[0]].x) ex[0] = i;
        if (points[i].x > points[ex[1]].x) ex[1] = i;
        if (points[i].y < points[ex[2]].y) ex[2] = i;
        if (points[i].y > points[ex[3]].y) ex[3] = i;
        if (points[i].z < points[ex[4]].z) ex[4] = i;
        if (points[i].z > points[ex[5]].z) ex[5] = i;
    }
    std::uint32_t i0 = 0, i1 = 0;
    double best = -1.0;
    for (int s = 0; s < 6; ++s)
        for (int t = s + 1; t < 6; ++t) {
            double d = norm(points[ex[s]] - points[ex[t]]);
            if (d > best) {
                best = d;
                i0 = ex[s];
                i1 = ex[t];
            }
        }
    if (best <= eps) {
        hull.degenerate = true;
        return hull;
    }
    Vec3 axis = points[i1] - points[i0];
    std::uint32_t i2 = 0;
    best = -1.0;
    for (std::uint32_t i = 0; i < np; ++i) {
        double d = norm(cross(points[i] - points[i0], axis));
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best / norm(axis) <= eps) {
        hull.degenerate = true;
        return hull;
    }
    Vec3 pn = cross(axis, points[i2] - points[i0]);
    pn = (1.0 / norm(pn)) * pn;
    std::uint32_t i3 = 0;
    best = -1.0;
    double signed_best = 0.0;
    for (std::uint32_t i = 0; i < np; ++i) {
        double d = dot(pn, points[i] - points[i0]);
        if (std::abs(d) > best) {
            best = std::abs(d);
            signed_best = d;
            i3 = i;
        }
    }
    if (best <= eps) {
        hull.degenerate = true;
        return hull;
    }
    if (signed_best > 0.0) std::swap(i1, i2);  // make (i0,i1,i2) face away from i3

    std::vector<Face> faces;
    faces.reserve(256);
    faces.push_back(make_face(points, i0, i1, i2));
    faces.push_back(make_face(points, i0, i3, i1));
    faces.push_back(make_face(points, i1, i3, i2));
    faces.push_back(make_face(points, i0, i2, i3));
    {
        // Stitch tetrahedron adjacency by shared edges.
        std::unordered_map<std::uint64_t, std::pair<int, int>> edges;
        for (int fi = 0; fi < 4; ++fi)
            for (int e = 0; e < 3; ++e) {
                std::uint32_t a = faces[fi].v[e], b = faces[fi].v[(e + 1) % 3];
                std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
                auto it = edges.find(key);
                if (it == edges.end()) {
                    edges[key] = {fi, e};
                } else {
                    faces[fi].nb[e] = it->second.first;
                    faces[it->second.first].nb[it->second.second] = fi;
                }
            }
    }

    auto push_point = [&](std::uint32_t pi, auto first_face, auto last_face) {
        double bd = eps;
        int bf = -1;
        for (auto fi = first_face; fi != last_face; ++fi) {
            if (!faces[*fi].alive) continue;
            double d = dist_to(faces[*fi], points[pi]);
            if (d > bd) {
                bd = d;
                bf = *fi;
            }
        }
        if (bf >= 0) {
            Face& f = faces[bf];
            f.outside.push_back(pi);
            if (bd > f.far_d) {
                f.far_d = bd;
                f.far_pt = pi;
            }
        }
    };

    std::vector<int> initial{0, 1, 2, 3};
    for (std::uint32_t i = 0; i < np; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        push_point(i, initial.begin(), initial.end());
    }

    std::vector<int> pending{0, 1, 2, 3};
    std::vector<int> visible, horizon_face, fresh;
    std::vector<std::uint32_t> horizon_a, horizon_b;
    std::vector<int> mark(faces.size(), 0);
    int epoch = 0;

    while (!pending.empty()) {
        int fi = pending.back();
        pending.pop_back();
        if (!faces[fi].alive || faces[fi].outside.empty()) continue;
        std::uint32_t p = faces[fi].far_pt;
        const Vec3 apex = points[p];

        // Collect faces visible from the apex.
        ++epoch;
        mark.resize(faces.size(), 0);
        visible.clear();
        visible.push_back(fi);
        mark[fi] = epoch;
        for (std::size_t h = 0; h < visible.size(); ++h) {
            int cf = visible[h];
            for (int e = 0; e < 3; ++e) {
                int nb = faces[cf].nb[e];
                if (nb < 0 || mark[nb] == epoch) continue;
                if (faces[nb].alive && dist_to(faces[nb], apex) > eps) {
                    mark[nb] = epoch;
                    visible.push_back(nb);
                }
            }
        }
        // Horizon edges in the orientation of the visible side.
        horizon_a.clear();
        horizon_b.clear();
        horizon_face.clear();
        for (int cf : visible)
            for (int e = 0; e < 3; ++e) {
                int nb = faces[cf].nb[e];
                if (nb >= 0 && mark[nb] != epoch) {
                    horizon_a.push_back(faces[cf].v[e]);
                    horizon_b.push_back(faces[cf].v[(e + 1) % 3]);
                    horizon_face.push_back(nb);
                }
            }

        fresh.clear();
        for (std::size_t h = 0; h < horizon_a.size(); ++h) {
            Face nf = make_face(points, horizon_a[h], horizon_b[h], p);
            nf.nb[0] = horizon_face[h];
            int idx = static_cast<int>(faces.size());
            faces.push_back(std::move(nf));
            mark.push_back(0);
            fresh.push_back(idx);
            // Re-point the outer neighbor's adjacency at the new face.
            Face& outer = faces[horizon_face[h]];
            for (int e = 0; e < 3; ++e) {
                if ((outer.v[e] == horizon_b[h] && outer.v[(e + 1) % 3] == horizon_a[h])) {
                    outer.nb[e] = idx;
                    break;
                }
            }
        }
        // Link the cone faces around the apex: edge (b, p) of one face meets
        // edge (p, a) of the face whose a equals b.
        std::unordered_map<std::uint32_t, int> by_a;
        for (std::size_t h = 0; h < fresh.size(); ++h) by_a[horizon_a[h]] = fresh[h];
        for (std::size_t h = 0; h < fresh.size(); ++h) {
            int self = fresh[h];
            auto it = by_a.find(horizon_b[h]);
            if (it == by_a.end()) throw std::logic_error("convex_hull: broken horizon loop");
            faces[self].nb[1] = it->second;   // edge (b, p)
            faces[it->second].nb[2] = self;   // edge (p, a)
        }

        for (int cf : visible) faces[cf].alive = false;
        for (int cf : visible) {
            for (std::uint32_t q : faces[cf].outside) {
                if (q == p) continue;
                push_point(q, fresh.begin(), fresh.end());
            }
            faces[cf].outside.clear();
            faces[cf].outside.shrink_to_fit();
        }
        for (int nf : fresh)
            if (!faces[nf].outside.empty()) pending.push_back(nf);
    }

    // Gather vertices in ascending source order for a deterministic layout.
    std::vector<std::uint32_t> vid;
    for (const Face& f : faces)
        if (f.alive) vid.insert(vid.end(), {f.v[0], f.v[1], f.v[2]});
    std::sort(vid.begin(), vid.end());
    vid.erase(std::unique(vid.begin(), vid.end()), vid.end());
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    remap.reserve(vid.size());
    hull.vertices.reserve(vid.size());
    hull.z_min = hull.z_max = points[vid[0]].z;
    for (std::uint32_t id : vid) {
        remap[id] = static_cast<std::uint32_t>(hull.vertices.size());
        hull.vertices.push_back(points[id]);
        hull.z_min = std::min(hull.z_min, points[id].z);
        hull.z_max = std::max(hull.z_max, points[id].z);
    }
    for (const Face& f : faces)
        if (f.alive) hull.faces.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
    return hull;
}

ConvexHull convex_hull(const UnitLoop& loop) {
    return convex_hull_of_points(loop.points, loop.n, loop.seed_path.stream_index);
}

std::vector<Vec3> transform(const ConvexHull& hull, double scale, Vec3 offset) {
    if (!(scale > 0.0)) throw std::invalid_argument("transform: scale must be positive");
    std::vector<Vec3> out;
    out.reserve(hull.vertices.size());
    for (const Vec3& v : hull.vertices) out.push_back(offset + scale * v);
    return out;
}

HullStats hull_statistics(std::span<const std::uint64_t> n_values, std::uint64_t loops_per_n,
                          std::uint64_t master_seed) {
    if (loops_per_n < 10) throw std::invalid_argument("hull_statistics: need >= 10 loops per n");
    HullStats stats;
    std::uint64_t stream = 0;
    for (std::uint64_t n : n_values) {
        HullStatsRow row;
        row.n = n;
        double sv = 0.0, sv2 = 0.0, sf = 0.0, sf2 = 0.0, st = 0.0;
        std::uint64_t used = 0;
        for (std::uint64_t i = 0; i < loops_per_n; ++i, ++stream) {
            UnitLoop loop = sample_bridge(n, {master_seed, stream});
            auto t0 = std::chrono::steady_clock::now();
            ConvexHull h = convex_hull(loop);
            auto t1 = std::chrono::steady_clock::now();
            if (h.degenerate) {
                ++row.degenerate_count;
                continue;
            }
            double v = static_cast<double>(h.vertices.size());
            double f = static_cast<double>(h.faces.size());
            sv += v;
            sv2 += v * v;
            sf += f;
            sf2 += f * f;
            st += std::chrono::duration<double>(t1 - t0).count();
            ++used;
        }
        row.samples = used;
        if (used > 1) {
            row.mean_vertices = sv / used;
            row.mean_faces = sf / used;
            row.mean_build_seconds = st / used;
            double vv = (sv2 - sv * sv / used) / (used - 1);
            double vf = (sf2 - sf * sf / used) / (used - 1);
            row.se_vertices = std::sqrt(std::max(vv, 0.0) / used);
            row.se_faces = std::sqrt(std::max(vf, 0.0) / used);
        }
        stats.rows.push_back(row);
    }
    return stats;
}

}  // namespace wlp
