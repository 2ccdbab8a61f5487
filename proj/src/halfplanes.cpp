#include "cat0/halfplanes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "cat0/modulus.hpp"

namespace cat0 {

namespace {

bool face_touches_origin(const std::vector<Vec2>& c, double tol) {
    for (size_t i = 0; i < c.size(); ++i) {
        const Vec2 a = c[i], b = c[(i + 1) % c.size()];
        const Vec2 ab = b - a;
        const double t = std::clamp(dot(-a, ab) / dot(ab, ab), 0.0, 1.0);
        if (norm(a + ab * t) <= tol) return true;
    }
    return false;
}

std::vector<Vec2> chart_corners(const Face& F, const Rigid2& T) {
    std::vector<Vec2> c;
    for (const Vec2& v : F.corners) c.push_back(T.apply(v));
    return c;
}

}  // namespace

HalfPlaneRegion semicircle_halfplane(const PEComplex& X, const SupportSet& S, const Semicircle& tau,
                                     const Vec2* toward_p, double alpha, bool certify, double tol) {
    HalfPlaneRegion Z;
    Z.tau = tau;
    Z.tau.x = X.canonical(tau.x);
    if (!S.mask.at(tau.face)) throw Error(ErrorKind::PreconditionViolated, "semicircle face is not in S");
    if (classify_point(X, S, Z.tau.x).kind != PointClass::Kind::Flat)
        throw Error(ErrorKind::PreconditionViolated, "half-planes are flowed out from flat points only");
    const Vec2 start = unit(heading(tau.start));
    if (toward_p) {
        const Vec2 mid = unit(heading(start) + tau.orientation * kPi / 2);
        const double gap = std::max(0.0, angle_between(*toward_p, mid) - kPi / 2);
        if (!(gap > alpha)) throw Error(ErrorKind::PreconditionViolated, "semicircle is within alpha of the direction to p");
    }
    const Vec2 x_uv = X.position_in_face(Z.tau.x, tau.face);
    const double rot = -heading(start);
    Rigid2 R;
    R.m = {std::cos(rot), -std::sin(rot), std::sin(rot), std::cos(rot)};
    if (tau.orientation < 0) R.m = {R.m[0], R.m[1], -R.m[2], -R.m[3]};
    R.t = -R.apply_dir(x_uv);

    std::map<int, Rigid2> placed;
    std::map<std::pair<long long, long long>, int> occupied;
    std::deque<int> queue{tau.face};
    placed[tau.face] = R;
    const double etol = 1e-9;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        const Face& F = X.face(f);
        const Rigid2 T = placed[f];
        const auto C = chart_corners(F, T);
        double hmax = -kInf;
        Vec2 ctr{};
        for (const Vec2& c : C) {
            hmax = std::max(hmax, c.y);
            ctr = ctr + c;
        }
        ctr = ctr / static_cast<double>(C.size());
        const bool inside = hmax > etol;
        if (!inside && !face_touches_origin(C, etol)) continue;
        if (inside) {
            const auto key = std::make_pair(std::llround(ctr.x * 1e6), std::llround(ctr.y * 1e6));
            const auto [it, fresh] = occupied.emplace(key, f);
            if (!fresh && it->second != f) Z.embedded = false;
            Z.faces.push_back(f);
            Z.to_chart.push_back(T);
        }
        for (int j = 0; j < F.size(); ++j) {
            const Vec2 A = C[j], B = C[(j + 1) % F.size()];
            if (A.y <= etol && B.y <= etol && !(inside || face_touches_origin({A, B}, etol))) continue;
            const double side_face = cross(B - A, ctr - A);
            const double side_origin = cross(B - A, -A);
            if (side_origin * side_face < -etol * norm(B - A)) continue;  // would develop towards the origin
            const int e = F.loop[j];
            if (X.edge(e).frontier) {
                if (inside) Z.truncated = true;
                continue;
            }
            int g = -1;
            for (int h : X.edge(e).faces)
                if (h != f && S.mask[h] && (g < 0 || h < g)) g = h;
            if (g < 0) continue;
            const int jg = X.face(g).loop_index(e);
            const Rigid2 Tg = T.compose(unfold_across(X, g, jg, f, j));
            const auto it = placed.find(g);
            if (it != placed.end()) {
                const auto Cg = chart_corners(X.face(g), Tg), Cold = chart_corners(X.face(g), it->second);
                for (size_t i = 0; i < Cg.size(); ++i)
                    if (dist(Cg[i], Cold[i]) > 1e-7) Z.embedded = false;
                continue;
            }
            placed[g] = Tg;
            queue.push_back(g);
        }
    }
    if (certify) certify_region(X, Z, tol);
    return Z;
}

void certify_region(const PEComplex& X, HalfPlaneRegion& Z, double tol) {
    std::vector<Vec2> chart{{0.0, 0.0}};
    for (double rho : {0.5, 1.5, 3.0})
        for (double phi : {kPi / 6, kPi / 2, 5 * kPi / 6}) chart.push_back(unit(phi) * rho);
    std::vector<std::pair<Vec2, PointLocation>> pts;
    for (const Vec2& c : chart)
        for (size_t k = 0; k < Z.faces.size(); ++k) {
            const Vec2 uv = Z.to_chart[k].inverse().apply(c);
            if (X.face(Z.faces[k]).contains(uv, 1e-9)) {
                pts.emplace_back(c, X.locate(Z.faces[k], uv));
                break;
            }
        }
    Z.samples = static_cast<int>(pts.size());
    const int n = Z.samples;
    std::vector<double> worst(n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const DistanceField field(X, pts[i].second, 7.0);
        for (int j = i + 1; j < n; ++j)
            worst[i] = std::max(worst[i], std::abs(field.at(pts[j].second) - dist(pts[i].first, pts[j].first)));
    }
    Z.max_deviation = n > 0 ? *std::max_element(worst.begin(), worst.end()) : 0.0;
    Z.certified = Z.embedded && n > 1 && Z.max_deviation <= tol;
}

HalfPlaneSubcomplex maximal_halfplane_subcomplex(const PEComplex& X, const HalfPlaneRegion& Z) {
    HalfPlaneSubcomplex H;
    std::vector<std::pair<int, double>> kept;
    for (size_t k = 0; k < Z.faces.size(); ++k) {
        const Face& F = X.face(Z.faces[k]);
        if (!F.is_square()) {
            H.parallel = false;
            return {{}, {}, 0.0, false};
        }
        const auto C = chart_corners(F, Z.to_chart[k]);
        const double ang = std::fmod(std::abs(heading(C[1] - C[0])), kPi / 2);
        if (std::min(ang, kPi / 2 - ang) > 1e-7) return {{}, {}, 0.0, false};
        double low = kInf;
        for (const Vec2& c : C) low = std::min(low, c.y);
        if (low >= -1e-9) kept.emplace_back(Z.faces[k], low);
    }
    if (kept.empty()) return H;
    double row0 = kInf;
    for (const auto& [f, low] : kept) row0 = std::min(row0, low);
    H.strip = std::max(0.0, row0);
    for (const auto& [f, low] : kept) {
        H.faces.push_back(f);
        if (low < row0 + 0.5) H.boundary_squares.push_back(f);
    }
    std::sort(H.faces.begin(), H.faces.end());
    std::sort(H.boundary_squares.begin(), H.boundary_squares.end());
    return H;
}

namespace {

struct Candidate {
    PointLocation x;
    Semicircle tau;
    Vec2 toward_p;
};

// Link points spaced evenly along the S-part of the link at p.
std::vector<GraphPoint> spaced_link_points(const LinkGraph& L, const EdgeMask& mask, int count) {
    double total = 0.0;
    for (int e = 0; e < L.graph.edge_count(); ++e)
        if (mask[e]) total += L.graph.edges[e].length;
    std::vector<GraphPoint> out;
    int e = 0;
    double before = 0.0;
    for (int k = 0; k < count; ++k) {
        const double s = total * k / count;
        while (e < L.graph.edge_count() && (!mask[e] || before + L.graph.edges[e].length <= s)) {
            if (mask[e]) before += L.graph.edges[e].length;
            ++e;
        }
        if (e >= L.graph.edge_count()) break;
        out.push_back(canonical(L.graph, GraphPoint::on_edge(e, s - before)));
    }
    return out;
}

std::string link_signature(const MetricGraph& g) {
    std::vector<long long> lens;
    for (const auto& e : g.edges) lens.push_back(std::llround(e.length * 1e9));
    std::sort(lens.begin(), lens.end());
    std::vector<int> deg(g.labels.size(), 0);
    for (const auto& e : g.edges) {
        ++deg[e.a];
        ++deg[e.b];
    }
    std::sort(deg.begin(), deg.end());
    std::string s;
    for (auto l : lens) s += std::to_string(l) + ",";
    s += "|";
    for (int d : deg) s += std::to_string(d) + ",";
    return s;
}

}  // namespace

Decomposition decompose(const PEComplex& X, const SupportSet& S, const PointLocation& p, double r2, double alpha,
                        int directions) {
    if (!X.all_squares()) throw Error(ErrorKind::InvalidInput, "decomposition needs a square complex");
    if (!(alpha > 0.0 && alpha < kPi / 8)) throw Error(ErrorKind::InvalidInput, "alpha must lie in (0, pi/8)");
    if (!(r2 > 0.0)) throw Error(ErrorKind::InvalidInput, "r2 must be positive");
    Decomposition D;
    D.center = X.canonical(p);
    D.r2 = r2;
    D.alpha = alpha;
    D.core_radius_bound = r2 + 1.0 / std::cos(kPi / 8) + 1.0;
    const DistanceField field(X, p, D.core_radius_bound + 3.0);
    if (frontier_distance(field) <= D.core_radius_bound)
        throw Error(ErrorKind::TruncationTooSmall, "truncation does not contain B(p, r2 + sec(pi/8) + 1)");

    const FiberReport fib = fiber_graph(field, S, r2);
    if (fib.branch_nodes > 0 || !fib.all_valence_at_least_two) {
        D.precondition_ok = false;
        D.precondition_note = "fiber at r2 has " + std::to_string(fib.branch_nodes) + " branch nodes";
    } else {
        D.precondition_note = "fiber at r2 is a union of " + std::to_string(fib.components) + " circles";
    }

    std::map<std::string, MetricGraph> links;
    for (int v : S.vertices)
        if (!X.vertex(v).frontier && field.at_vertex(v) <= r2 + 2.0) {
            const PointClass pc = classify_point(X, S, PointLocation::at_vertex(v));
            links.emplace(link_signature(pc.link), pc.link);
        }
    std::vector<MetricGraph> family;
    for (auto& [sig, g] : links) family.push_back(g);
    try {
        D.link_modulus_beta = isolated_suspension_modulus(family, alpha).beta;
    } catch (const Error& e) {
        D.link_modulus_beta = -1.0;
        D.precondition_note += "; link modulus failed: " + std::string(e.what());
    }

    const LinkGraph Lp = link_at(X, D.center);
    const EdgeMask mask = Lp.restricted_to(S.mask);
    std::vector<Candidate> cands;
    for (const GraphPoint& gp : spaced_link_points(Lp, mask, directions)) {
        const FaceDirection fd = direction_of(Lp, gp, mask);
        GeodesicPath ray;
        try {
            ray = shoot(X, S.mask, D.center, fd.face, fd.dir, r2);
        } catch (const Error&) {
            continue;
        }
        if (ray.segments.empty() || ray.reached_frontier) continue;
        const PathSegment& last = ray.segments.back();
        const Vec2 v = unit(heading(last.to - last.from));
        for (Vec2 e : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
            const double c = cross(e, v);
            if (std::abs(c) < 1e-12) continue;
            if (c < 0) e = -e;
            const double a = angle_between(e, v);
            if (a < kPi / 8 - 1e-12 || a > 7 * kPi / 8 + 1e-12 || !(std::min(a, kPi - a) > alpha)) continue;
            cands.push_back({ray.end(), {ray.end(), last.face, e, 1, kPi}, -v});
        }
    }
    D.candidates = static_cast<int>(cands.size());
    const int nc = D.candidates;
    std::vector<HalfPlaneRegion> regions(nc);
    std::vector<HalfPlaneSubcomplex> subs(nc);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nc; ++i) {
        try {
            regions[i] = semicircle_halfplane(X, S, cands[i].tau, &cands[i].toward_p, alpha, false);
            subs[i] = maximal_halfplane_subcomplex(X, regions[i]);
        } catch (const Error&) {
            subs[i] = {};
        }
    }

    std::set<std::vector<int>> seen;
    std::vector<bool> covered(X.faces().size(), false);
    for (int i = 0; i < nc; ++i) {
        if (subs[i].empty() || !seen.insert(subs[i].boundary_squares).second) continue;
        HalfPlaneEntry entry;
        entry.H = subs[i];
        entry.x = cands[i].x;
        certify_region(X, regions[i]);
        entry.region_certified = regions[i].certified;
        for (int f : entry.H.faces) {
            const auto it = std::find(regions[i].faces.begin(), regions[i].faces.end(), f);
            entry.chart.push_back(chart_corners(X.face(f), regions[i].to_chart[it - regions[i].faces.begin()]));
        }
        entry.boundary_distance = kInf;
        for (int f : entry.H.boundary_squares)
            for (int u : X.face(f).verts) entry.boundary_distance = std::min(entry.boundary_distance, field.at_vertex(u));
        entry.near_boundary_ok = entry.boundary_distance <= 1.0 + r2 + kTolGeom;
        FaceSet hmask(X.faces().size(), false);
        for (int f : entry.H.faces) {
            hmask[f] = true;
            covered[f] = true;
        }
        std::set<int> hverts;
        for (int f : entry.H.faces) hverts.insert(X.face(f).verts.begin(), X.face(f).verts.end());
        for (int u : hverts) {
            if (X.vertex(u).frontier) continue;
            const LinkGraph L = link_at(X, PointLocation::at_vertex(u));
            const EdgeMask hm = L.restricted_to(hmask);
            double len = 0.0;
            std::vector<int> deg(L.graph.labels.size(), 0);
            for (int k = 0; k < L.graph.edge_count(); ++k)
                if (hm[k]) {
                    len += L.graph.edges[k].length;
                    ++deg[L.graph.edges[k].a];
                    ++deg[L.graph.edges[k].b];
                }
            std::vector<int> ends;
            for (size_t w = 0; w < deg.size(); ++w)
                if (deg[w] == 1) ends.push_back(static_cast<int>(w));
            if (ends.empty()) {
                const auto susp = suspension_structure(L.graph, hm);
                if (!susp || susp->valence() != 2) entry.internal_links_flat = false;
            } else if (ends.size() == 2 && std::abs(len - kPi) <= kTolGeom) {
                const double d = distance(L.graph, GraphPoint::at_vertex(ends[0]), GraphPoint::at_vertex(ends[1]));
                if (d < kPi - kTolGeom) entry.boundary_geodesic = false;
            } else {
                entry.internal_links_flat = false;
            }
        }
        D.halfplanes.push_back(std::move(entry));
    }
    for (int f : S.faces) {
        if (covered[f]) continue;
        D.core.push_back(f);
        double far = 0.0;
        for (int u : X.face(f).verts) far = std::max(far, field.at_vertex(u));
        if (far > D.core_radius_bound + kTolGeom) D.core_outside.push_back(f);
    }
    bool all_ok = !D.halfplanes.empty();
    for (const auto& h : D.halfplanes)
        all_ok = all_ok && h.near_boundary_ok && h.internal_links_flat && h.boundary_geodesic && h.region_certified;
    D.covering_certified = D.precondition_ok && D.core_outside.empty() && all_ok;
    return D;
}

}  // namespace cat0
