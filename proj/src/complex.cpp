#include "cat0/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cat0 {

Vec2 Face::edge_point(int i, double t) const {
    const double s = forward[i] ? t : 1.0 - t;
    return lerp(corners[i], corners[(i + 1) % size()], s);
}

int Face::loop_index(int e) const {
    for (int i = 0; i < size(); ++i)
        if (loop[i] == e) return i;
    return -1;
}

Vec2 Face::centroid() const {
    Vec2 c{};
    for (auto p : corners) c = c + p;
    return c / static_cast<double>(corners.size());
}

bool Face::contains(Vec2 p, double tol) const {
    for (int i = 0; i < size(); ++i) {
        const Vec2 a = corners[i], b = corners[(i + 1) % size()];
        if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
    }
    return true;
}

bool same_point(const PointLocation& a, const PointLocation& b, double tol) {
    if (a.kind != b.kind || a.id != b.id) return false;
    switch (a.kind) {
        case PointLocation::Kind::Vertex: return true;
        case PointLocation::Kind::Edge: return std::abs(a.t - b.t) <= tol;
        case PointLocation::Kind::Face: return dist(a.uv, b.uv) <= tol;
    }
    return false;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

}  // namespace

PEComplex PEComplex::build(const ComplexSpec& spec) {
    PEComplex X;
    for (const auto& id : spec.vertices) {
        if (!X.vertex_ids_.emplace(id, static_cast<int>(X.vertices_.size())).second)
            throw Error(ErrorKind::InvalidInput, "duplicate vertex id " + id);
        X.vertices_.push_back(Vertex{id, {}, {}, false});
    }
    for (const auto& es : spec.edges) {
        Edge e;
        e.id = es.id;
        for (int k = 0; k < 2; ++k) {
            auto v = X.vertex_index(es.ends[k]);
            if (!v) throw Error(ErrorKind::DanglingReference, "edge " + es.id + " references vertex " + es.ends[k]);
            e.ends[k] = *v;
        }
        if (!(es.length > 0.0)) throw Error(ErrorKind::ShapeMismatch, "edge " + es.id + " has nonpositive length");
        e.length = es.length;
        const int idx = static_cast<int>(X.edges_.size());
        if (!X.edge_ids_.emplace(es.id, idx).second)
            throw Error(ErrorKind::InvalidInput, "duplicate edge id " + es.id);
        X.vertices_[e.ends[0]].edges.push_back(idx);
        if (e.ends[1] != e.ends[0]) X.vertices_[e.ends[1]].edges.push_back(idx);
        X.edges_.push_back(std::move(e));
    }
    for (const auto& fs : spec.faces) {
        Face f;
        f.id = fs.id;
        f.shape = fs.shape;
        for (const auto& eid : fs.loop) {
            auto e = X.edge_index(eid);
            if (!e) throw Error(ErrorKind::DanglingReference, "face " + fs.id + " references edge " + eid);
            f.loop.push_back(*e);
        }
        const int k = f.size();
        const int expected = f.is_square() ? 4 : 3;
        if (k != expected)
            throw Error(ErrorKind::ShapeMismatch, "face " + fs.id + " loop has " + std::to_string(k) + " edges");

        // Orient the loop: try both directions of the first edge.
        bool closed = false;
        for (int first_forward = 1; first_forward >= 0 && !closed; --first_forward) {
            std::vector<int> verts;
            std::vector<bool> fwd;
            const Edge& e0 = X.edges_[f.loop[0]];
            int start = first_forward ? e0.ends[0] : e0.ends[1];
            int cur = start;
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                const Edge& e = X.edges_[f.loop[i]];
                verts.push_back(cur);
                if (i == 0) {
                    fwd.push_back(first_forward == 1);
                    cur = first_forward ? e.ends[1] : e.ends[0];
                } else if (e.ends[0] == cur) {
                    fwd.push_back(true);
                    cur = e.ends[1];
                } else if (e.ends[1] == cur) {
                    fwd.push_back(false);
                    cur = e.ends[0];
                } else {
                    ok = false;
                }
            }
            if (ok && cur == start) {
                f.verts = std::move(verts);
                f.forward = std::move(fwd);
                closed = true;
            }
        }
        if (!closed) throw Error(ErrorKind::OpenLoop, "face " + fs.id + " boundary loop is not closed");

        std::vector<double> len(k);
        for (int i = 0; i < k; ++i) len[i] = X.edges_[f.loop[i]].length;
        if (f.is_square()) {
            for (int i = 0; i < k; ++i)
                if (std::abs(len[i] - 1.0) > kTolGeom)
                    throw Error(ErrorKind::ShapeMismatch, "square " + fs.id + " has a side of length " + std::to_string(len[i]));
            f.corners = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        } else {
            const auto& sides = std::get<TriangleShape>(f.shape).sides;
            for (int i = 0; i < 3; ++i)
                if (std::abs(len[i] - sides[i]) > kTolGeom * std::max(1.0, sides[i]))
                    throw Error(ErrorKind::ShapeMismatch, "triangle " + fs.id + " side lengths do not match its edges");
            const double a = sides[0], b = sides[1], c = sides[2];
            if (!(a < b + c - kTolGeom && b < a + c - kTolGeom && c < a + b - kTolGeom))
                throw Error(ErrorKind::ShapeMismatch, "triangle " + fs.id + " violates the triangle inequality");
            const double x = (a * a + c * c - b * b) / (2.0 * a);
            f.corners = {{0, 0}, {a, 0}, {x, std::sqrt(std::max(0.0, c * c - x * x))}};
        }
        f.area = 0.0;
        for (int i = 0; i < k; ++i) {
            const Vec2 prev = f.corners[(i + k - 1) % k], cur = f.corners[i], next = f.corners[(i + 1) % k];
            f.angles.push_back(angle_between(prev - cur, next - cur));
            f.area += 0.5 * cross(cur, next);
        }
        const int idx = static_cast<int>(X.faces_.size());
        if (!X.face_ids_.emplace(fs.id, idx).second)
            throw Error(ErrorKind::InvalidInput, "duplicate face id " + fs.id);
        for (int i = 0; i < k; ++i) {
            auto& ef = X.edges_[f.loop[i]].faces;
            if (std::find(ef.begin(), ef.end(), idx) == ef.end()) ef.push_back(idx);
            X.vertices_[f.verts[i]].corners.emplace_back(idx, i);
        }
        X.faces_.push_back(std::move(f));
    }
    for (const auto& eid : spec.frontier_edges) {
        auto e = X.edge_index(eid);
        if (!e) throw Error(ErrorKind::DanglingReference, "frontier edge " + eid);
        X.edges_[*e].frontier = true;
        for (int v : X.edges_[*e].ends) X.vertices_[v].frontier = true;
    }
    for (const auto& vid : spec.frontier_vertices) {
        auto v = X.vertex_index(vid);
        if (!v) throw Error(ErrorKind::DanglingReference, "frontier vertex " + vid);
        X.vertices_[*v].frontier = true;
    }

    if (X.vertices_.empty()) throw Error(ErrorKind::InvalidInput, "complex has no vertices");
    std::vector<int> parent(X.vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : X.edges_) parent[find_root(parent, e.ends[0])] = find_root(parent, e.ends[1]);
    const int root = find_root(parent, 0);
    for (int v = 0; v < static_cast<int>(parent.size()); ++v)
        if (find_root(parent, v) != root)
            throw Error(ErrorKind::Disconnected, "vertex " + X.vertices_[v].id + " is not connected to " + X.vertices_[0].id);
    return X;
}

std::optional<int> PEComplex::vertex_index(const std::string& id) const {
    auto it = vertex_ids_.find(id);
    if (it == vertex_ids_.end()) return std::nullopt;
    return it->second;
}
std::optional<int> PEComplex::edge_index(const std::string& id) const {
    auto it = edge_ids_.find(id);
    if (it == edge_ids_.end()) return std::nullopt;
    return it->second;
}
std::optional<int> PEComplex::face_index(const std::string& id) const {
    auto it = face_ids_.find(id);
    if (it == face_ids_.end()) return std::nullopt;
    return it->second;
}

bool PEComplex::all_squares() const {
    return std::all_of(faces_.begin(), faces_.end(), [](const Face& f) { return f.is_square(); });
}

bool PEComplex::on_frontier(const PointLocation& p) const {
    switch (p.kind) {
        case PointLocation::Kind::Vertex: return vertices_.at(p.id).frontier;
        case PointLocation::Kind::Edge: return edges_.at(p.id).frontier;
        case PointLocation::Kind::Face: return false;
    }
    return false;
}

Vec2 PEComplex::position_in_face(const PointLocation& p, int f) const {
    const Face& face = faces_.at(f);
    switch (p.kind) {
        case PointLocation::Kind::Vertex:
            for (int i = 0; i < face.size(); ++i)
                if (face.verts[i] == p.id) return face.corners[i];
            break;
        case PointLocation::Kind::Edge: {
            const int i = face.loop_index(p.id);
            if (i >= 0) return face.edge_point(i, p.t);
            break;
        }
        case PointLocation::Kind::Face:
            if (p.id == f) return p.uv;
            break;
    }
    throw Error(ErrorKind::InvalidInput, "point does not lie on face " + face.id);
}

std::vector<int> PEComplex::faces_at(const PointLocation& p) const {
    std::vector<int> out;
    switch (p.kind) {
        case PointLocation::Kind::Vertex:
            for (auto [f, c] : vertices_.at(p.id).corners)
                if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
            break;
        case PointLocation::Kind::Edge: out = edges_.at(p.id).faces; break;
        case PointLocation::Kind::Face: out.push_back(p.id); break;
    }
    return out;
}

PointLocation PEComplex::locate(int f, Vec2 uv) const {
    const Face& face = faces_.at(f);
    if (!face.contains(uv)) throw Error(ErrorKind::OutsideFace, "coordinates outside face " + face.id);
    const int k = face.size();
    for (int i = 0; i < k; ++i)
        if (dist(uv, face.corners[i]) <= kTolGeom) return PointLocation::at_vertex(face.verts[i]);
    for (int i = 0; i < k; ++i) {
        const Vec2 a = face.corners[i], b = face.corners[(i + 1) % k];
        const Vec2 ab = b - a;
        const double len = norm(ab);
        if (std::abs(cross(ab, uv - a)) / len <= kTolGeom) {
            const double s = std::clamp(dot(uv - a, ab) / (len * len), 0.0, 1.0);
            return PointLocation::on_edge(face.loop[i], face.forward[i] ? s : 1.0 - s);
        }
    }
    return PointLocation::in_face(f, uv);
}

PointLocation PEComplex::canonical(const PointLocation& p) const {
    switch (p.kind) {
        case PointLocation::Kind::Vertex: return p;
        case PointLocation::Kind::Edge: {
            const Edge& e = edges_.at(p.id);
            if (p.t < -kTolGeom || p.t > 1.0 + kTolGeom)
                throw Error(ErrorKind::OutsideFace, "edge parameter outside [0,1]");
            if (p.t * e.length <= kTolGeom) return PointLocation::at_vertex(e.ends[0]);
            if ((1.0 - p.t) * e.length <= kTolGeom) return PointLocation::at_vertex(e.ends[1]);
            return p;
        }
        case PointLocation::Kind::Face: return locate(p.id, p.uv);
    }
    return p;
}

ComplexSpec PEComplex::to_spec() const {
    ComplexSpec s;
    for (const auto& v : vertices_) s.vertices.push_back(v.id);
    for (const auto& e : edges_) {
        s.edges.push_back({e.id, {vertices_[e.ends[0]].id, vertices_[e.ends[1]].id}, e.length});
        if (e.frontier) s.frontier_edges.push_back(e.id);
    }
    for (const auto& f : faces_) {
        ComplexSpec::FaceSpec fs{f.id, {}, f.shape};
        for (int e : f.loop) fs.loop.push_back(edges_[e].id);
        s.faces.push_back(std::move(fs));
    }
    for (const auto& v : vertices_) {
        if (!v.frontier) continue;
        const bool from_edge = std::any_of(v.edges.begin(), v.edges.end(), [&](int e) { return edges_[e].frontier; });
        if (!from_edge) s.frontier_vertices.push_back(v.id);
    }
    return s;
}

}  // namespace cat0
