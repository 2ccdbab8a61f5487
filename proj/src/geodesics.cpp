#include "cat0/geodesics.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace cat0 {

double GeodesicPath::length() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.length();
    return s;
}

GeodesicPath GeodesicPath::reversed() const {
    GeodesicPath r;
    r.reached_frontier = reached_frontier;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) r.segments.push_back({it->face, it->to, it->from});
    r.points.assign(points.rbegin(), points.rend());
    return r;
}

namespace {

Vec2 normalized(Vec2 v) { return v / norm(v); }

}  // namespace

GeodesicCertificate is_local_geodesic(const PEComplex& X, const GeodesicPath& path) {
    GeodesicCertificate cert;
    for (size_t k = 1; k < path.segments.size(); ++k) {
        const PathSegment& in = path.segments[k - 1];
        const PathSegment& out = path.segments[k];
        Crossing c;
        c.at = path.points[k];
        const bool joined = dist(X.position_in_face(c.at, in.face), in.to) <= 1e-7 &&
                            dist(X.position_in_face(c.at, out.face), out.from) <= 1e-7;
        if (joined) {
            const LinkGraph L = link_at(X, c.at, true);
            const GraphPoint u = link_point_of(L, in.face, normalized(in.from - in.to));
            const GraphPoint w = link_point_of(L, out.face, normalized(out.to - out.from));
            c.link_distance = distance(L.graph, u, w);
        } else {
            c.link_distance = -kInf;
        }
        c.margin = c.link_distance - kPi;
        cert.worst_margin = std::min(cert.worst_margin, c.margin);
        if (c.margin < -kTolGeom) cert.is_local_geodesic = false;
        cert.crossings.push_back(c);
    }
    return cert;
}

GeodesicPath trace_back(const DistanceField& field, const PointLocation& q_in) {
    const PEComplex& X = field.complex();
    const PointLocation q = X.canonical(q_in);
    int wi = -1;
    Vec2 x{};
    if (q.kind == PointLocation::Kind::Vertex && field.arrival(q.id).first >= 0) {
        const auto [aw, corner] = field.arrival(q.id);
        wi = aw;
        x = X.face(field.windows()[aw].face).corners[corner];
    } else {
        double best = kInf;
        for (int f : X.faces_at(q)) {
            const Vec2 pos = X.position_in_face(q, f);
            double d = kInf;
            const int w = field.best_window(f, pos, &d);
            if (w >= 0 && d < best) {
                best = d;
                wi = w;
                x = pos;
            }
        }
    }
    GeodesicPath path;
    if (same_point(q, field.source())) {
        path.points = {q};
        return path;
    }
    if (wi < 0) throw Error(ErrorKind::TruncationExit, "target not reached within the propagation radius");

    std::vector<PathSegment> rev;
    const auto& windows = field.windows();
    for (;;) {
        const Window& W = windows[wi];
        if (W.entry_side >= 0) {
            const Vec2 ab = W.b - W.a;
            const double lambda = cross(W.a - W.src, ab) / cross(x - W.src, ab);
            const Vec2 c = W.src + (x - W.src) * lambda;
            rev.push_back({W.face, c, x});
            x = W.from_parent.inverse().apply(c);
            wi = W.parent;
            continue;
        }
        rev.push_back({W.face, W.src, x});
        if (W.origin_vertex < 0) break;
        const auto [aw, corner] = field.arrival(W.origin_vertex);
        wi = aw;
        x = X.face(windows[aw].face).corners[corner];
    }
    std::reverse(rev.begin(), rev.end());
    path.points.push_back(field.source());
    for (const auto& seg : rev) {
        if (seg.length() < 1e-12) continue;
        if (!path.segments.empty()) path.points.push_back(X.locate(seg.face, seg.from));
        path.segments.push_back(seg);
    }
    path.points.push_back(q);
    if (path.segments.empty()) path.points = {q};
    return path;
}

GeodesicPath geodesic(const PEComplex& X, const PointLocation& p, const PointLocation& q) {
    const DistanceField field(X, p);
    GeodesicPath path = trace_back(field, q);
    for (size_t k = 1; k + 1 < path.points.size(); ++k)
        if (X.on_frontier(path.points[k]))
            throw Error(ErrorKind::TruncationExit, "geodesic touches the frontier at an interior point");
    return path;
}

RefinedGraph::RefinedGraph(const PEComplex& X, double eps) : X_(&X) {
    nodes_ = X.vertices().size();
    std::vector<int> first_interior(X.edges().size());
    std::vector<int> pieces(X.edges().size());
    for (size_t e = 0; e < X.edges().size(); ++e) {
        pieces[e] = std::max(1, static_cast<int>(std::ceil(X.edge(e).length / eps - 1e-9)));
        first_interior[e] = static_cast<int>(nodes_);
        nodes_ += pieces[e] - 1;
    }
    face_nodes_.resize(X.faces().size());
    adj_.resize(nodes_);
    for (size_t f = 0; f < X.faces().size(); ++f) {
        const Face& F = X.face(f);
        auto& fn = face_nodes_[f];
        for (int j = 0; j < F.size(); ++j) {
            fn.push_back({F.verts[j], F.corners[j]});
            const int e = F.loop[j];
            for (int k = 1; k < pieces[e]; ++k) {
                const double t = static_cast<double>(k) / pieces[e];
                fn.push_back({first_interior[e] + k - 1, F.edge_point(j, t)});
            }
        }
        for (size_t a = 0; a < fn.size(); ++a)
            for (size_t b = a + 1; b < fn.size(); ++b) {
                const double d = dist(fn[a].pos, fn[b].pos);
                adj_[fn[a].node].emplace_back(fn[b].node, d);
                adj_[fn[b].node].emplace_back(fn[a].node, d);
            }
    }
}

double RefinedGraph::upper_bound(const PointLocation& p_in, const PointLocation& q_in) const {
    const PEComplex& X = *X_;
    const PointLocation p = X.canonical(p_in), q = X.canonical(q_in);
    std::vector<double> dist_to(nodes_, kInf), extra(nodes_, kInf);
    double best = kInf;
    const auto pf = X.faces_at(p), qf = X.faces_at(q);
    for (int f : pf) {
        const Vec2 pos = X.position_in_face(p, f);
        for (const auto& n : face_nodes_[f]) dist_to[n.node] = std::min(dist_to[n.node], dist(pos, n.pos));
        if (std::find(qf.begin(), qf.end(), f) != qf.end())
            best = std::min(best, dist(pos, X.position_in_face(q, f)));
    }
    for (int f : qf) {
        const Vec2 pos = X.position_in_face(q, f);
        for (const auto& n : face_nodes_[f]) extra[n.node] = std::min(extra[n.node], dist(pos, n.pos));
    }
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (size_t n = 0; n < nodes_; ++n)
        if (dist_to[n] < kInf) pq.emplace(dist_to[n], static_cast<int>(n));
    while (!pq.empty()) {
        auto [d, n] = pq.top();
        pq.pop();
        if (d > dist_to[n]) continue;
        if (d >= best) break;
        best = std::min(best, d + extra[n]);
        for (auto [m, w] : adj_[n]) {
            if (d + w < dist_to[m]) {
                dist_to[m] = d + w;
                pq.emplace(d + w, m);
            }
        }
    }
    return best;
}

GraphPoint arrival_direction(const LinkGraph& L, const GeodesicPath& path) {
    const PathSegment& last = path.segments.back();
    return link_point_of(L, last.face, normalized(last.from - last.to));
}

GeodesicPath shoot(const PEComplex& X, const FaceSet& S, const PointLocation& x, int face, Vec2 dir,
                   double length) {
    GeodesicPath path;
    path.points.push_back(X.canonical(x));
    int cur = face;
    Vec2 pos = X.position_in_face(path.points.back(), face);
    Vec2 d = normalized(dir);
    double remaining = length;
    for (int guard = 0; remaining > 1e-12; ++guard) {
        if (guard > 1000000) throw Error(ErrorKind::InvalidInput, "ray tracing did not terminate");
        const Face& F = X.face(cur);
        double lambda = kInf;
        for (int j = 0; j < F.size(); ++j) {
            const Vec2 p0 = F.corners[j], e = F.corners[(j + 1) % F.size()] - p0;
            const double denom = cross(d, e);
            if (cross(e, d) >= -1e-15 * norm(e)) continue;  // not leaving through this side
            const double l = cross(p0 - pos, e) / denom;
            if (l >= -1e-12) lambda = std::min(lambda, std::max(0.0, l));
        }
        if (!(lambda < kInf)) throw Error(ErrorKind::InvalidInput, "ray does not leave the face");
        if (remaining <= lambda) {
            const Vec2 end = pos + d * remaining;
            path.segments.push_back({cur, pos, end});
            path.points.push_back(X.locate(cur, end));
            break;
        }
        const Vec2 exit = pos + d * lambda;
        if (lambda > 1e-12) {
            path.segments.push_back({cur, pos, exit});
            path.points.push_back(X.locate(cur, exit));
        }
        remaining -= lambda;
        const PointLocation at = lambda > 1e-12 ? path.points.back() : X.locate(cur, exit);
        if (X.on_frontier(at)) {
            path.reached_frontier = true;
            break;
        }
        if (remaining <= 1e-12) break;
        const LinkGraph L = link_at(X, at);
        const GraphPoint u = link_point_of(L, cur, -d);
        const EdgeMask mask = L.restricted_to(S);
        const auto ant = antipodal_set(L.graph, u, mask);
        if (ant.empty()) throw Error(ErrorKind::NoAntipode, "no antipode inside the subcomplex");
        const FaceDirection next = direction_of(L, ant.front(), mask);
        cur = next.face;
        d = normalized(next.dir);
        pos = X.position_in_face(at, cur);
    }
    return path;
}

GeodesicPath extend_in_subcomplex(const PEComplex& X, const FaceSet& S, const GeodesicPath& seg, double R) {
    if (seg.segments.empty())
        throw Error(ErrorKind::PreconditionViolated, "cannot extend a degenerate segment");
    GeodesicPath out = seg;
    if (R <= seg.length() + 1e-12) return out;
    const PointLocation x = seg.end();
    if (X.on_frontier(x)) {
        out.reached_frontier = true;
        return out;
    }
    const LinkGraph L = link_at(X, x);
    const GraphPoint u = arrival_direction(L, seg);
    const EdgeMask mask = L.restricted_to(S);
    const auto ant = antipodal_set(L.graph, u, mask);
    if (ant.empty()) throw Error(ErrorKind::NoAntipode, "no antipode of the arrival direction inside the subcomplex");
    const FaceDirection next = direction_of(L, ant.front(), mask);
    const GeodesicPath rest = shoot(X, S, x, next.face, next.dir, R - seg.length());
    out.segments.insert(out.segments.end(), rest.segments.begin(), rest.segments.end());
    out.points.insert(out.points.end(), rest.points.begin() + 1, rest.points.end());
    out.reached_frontier = rest.reached_frontier;
    return out;
}

PointLocation point_along(const PEComplex& X, const GeodesicPath& path, double s) {
    double acc = 0.0;
    for (const auto& seg : path.segments) {
        const double len = seg.length();
        if (s <= acc + len) return X.locate(seg.face, lerp(seg.from, seg.to, std::clamp((s - acc) / len, 0.0, 1.0)));
        acc += len;
    }
    return path.end();
}

PointLocation contract_toward(const PEComplex& X, const PointLocation& p, double ratio, const PointLocation& x) {
    if (!(ratio > 0.0 && ratio <= 1.0)) throw Error(ErrorKind::InvalidInput, "ratio must lie in (0, 1]");
    if (ratio == 1.0) return X.canonical(x);
    const GeodesicPath path = geodesic(X, p, x);
    return point_along(X, path, ratio * path.length());
}

}  // namespace cat0
