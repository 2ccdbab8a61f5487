#include "cat0/link.hpp"

#include <map>

namespace cat0 {

EdgeMask LinkGraph::restricted_to(const std::vector<bool>& faces) const {
    EdgeMask m(info.size(), false);
    for (size_t k = 0; k < info.size(); ++k) m[k] = faces[info[k].face];
    return m;
}

LinkGraph link_at(const PEComplex& X, const PointLocation& x_in, bool allow_frontier) {
    const PointLocation x = X.canonical(x_in);
    LinkGraph L;
    L.center = x;
    if (X.on_frontier(x)) {
        if (!allow_frontier) throw Error(ErrorKind::FrontierPoint, "link requested at a frontier point");
        L.partial = true;
    }
    switch (x.kind) {
        case PointLocation::Kind::Vertex: {
            const Vertex& v = X.vertex(x.id);
            std::map<std::pair<int, int>, int> end_node;  // (edge, end) -> link vertex
            for (int e : v.edges) {
                const Edge& ed = X.edge(e);
                for (int k = 0; k < 2; ++k) {
                    if (ed.ends[k] != x.id) continue;
                    const bool loop = ed.ends[0] == ed.ends[1];
                    end_node[{e, k}] = L.graph.add_vertex(loop ? ed.id + "#" + std::to_string(k) : ed.id);
                }
            }
            for (auto [f, i] : v.corners) {
                const Face& face = X.face(f);
                const int n = face.size();
                const int prev = (i + n - 1) % n;
                const int leave = end_node.at({face.loop[i], face.forward[i] ? 0 : 1});
                const int arrive = end_node.at({face.loop[prev], face.forward[prev] ? 1 : 0});
                L.graph.add_edge(leave, arrive, face.angles[i]);
                L.info.push_back({f, i, heading(face.corners[(i + 1) % n] - face.corners[i]), 1});
            }
            break;
        }
        case PointLocation::Kind::Edge: {
            const Edge& ed = X.edge(x.id);
            const int p0 = L.graph.add_vertex(X.vertex(ed.ends[0]).id);
            const int p1 = L.graph.add_vertex(X.vertex(ed.ends[1]).id);
            for (int f : ed.faces) {
                const Face& face = X.face(f);
                for (int i = 0; i < face.size(); ++i) {
                    if (face.loop[i] != x.id) continue;
                    const Vec2 d = face.corners[(i + 1) % face.size()] - face.corners[i];
                    L.graph.add_edge(p0, p1, kPi);
                    L.info.push_back({f, -1, heading(face.forward[i] ? -d : d), face.forward[i] ? -1 : 1});
                }
            }
            break;
        }
        case PointLocation::Kind::Face: {
            const int a = L.graph.add_vertex("dir0");
            const int b = L.graph.add_vertex("dirpi");
            L.graph.add_edge(a, b, kPi);
            L.info.push_back({x.id, -1, 0.0, 1});
            L.graph.add_edge(b, a, kPi);
            L.info.push_back({x.id, -1, kPi, 1});
            break;
        }
    }
    return L;
}

FaceDirection direction_of(const LinkGraph& L, GraphPoint p, const EdgeMask& mask) {
    int e = p.edge;
    double t = p.t;
    if (p.is_vertex()) {
        for (int k = 0; k < L.graph.edge_count(); ++k) {
            if (!mask.empty() && !mask[k]) continue;
            if (L.graph.edges[k].a == p.vertex) {
                e = k;
                t = 0.0;
                break;
            }
            if (L.graph.edges[k].b == p.vertex) {
                e = k;
                t = L.graph.edges[k].length;
                break;
            }
        }
        if (e < 0) throw Error(ErrorKind::InvalidInput, "isolated link vertex");
    }
    const auto& info = L.info.at(e);
    return {info.face, unit(info.base_angle + info.sign * t)};
}

GraphPoint link_point_of(const LinkGraph& L, int face, Vec2 dir) {
    const double h = heading(dir);
    for (int k = 0; k < L.graph.edge_count(); ++k) {
        const auto& info = L.info[k];
        if (info.face != face) continue;
        double t = wrap_angle(info.sign * (h - info.base_angle));
        const double len = L.graph.edges[k].length;
        if (t > kTwoPi - kTolGeom) t = 0.0;
        if (t <= len + kTolGeom) return canonical(L.graph, GraphPoint::on_edge(k, std::min(t, len)));
    }
    throw Error(ErrorKind::InvalidInput, "direction does not enter the face at this point");
}

}  // namespace cat0
