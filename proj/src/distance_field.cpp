#include "cat0/distance_field.hpp"

#include <algorithm>
#include <functional>

#include "cat0/link.hpp"

namespace cat0 {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(p, a);
    const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * s);
}

// Clips s in [lo, hi] to the half-plane alpha + beta * s >= 0.
bool clip(double alpha, double beta, double& lo, double& hi) {
    if (std::abs(beta) < 1e-300) return alpha >= 0.0;
    const double root = -alpha / beta;
    if (beta > 0) lo = std::max(lo, root);
    else hi = std::min(hi, root);
    return lo <= hi;
}

constexpr double kMinWindow = 1e-11;

}  // namespace

bool Window::visible(Vec2 x, double tol) const {
    const Vec2 r = x - src;
    if (entry_side >= 0) {
        Vec2 u = a - src, v = b - src;
        if (cross(u, v) < 0) std::swap(u, v);
        return cross(u / norm(u), r) >= -tol && cross(r, v / norm(v)) >= -tol;
    }
    if (has_wedge) return cross(wedge_lo, r) >= -tol && cross(r, wedge_hi) >= -tol;
    return true;
}

bool is_flat_vertex(const PEComplex& X, int v) {
    if (X.vertex(v).frontier) return false;
    const LinkGraph L = link_at(X, PointLocation::at_vertex(v));
    std::vector<int> degree(L.graph.vertex_count(), 0);
    for (const auto& e : L.graph.edges) {
        degree[e.a]++;
        degree[e.b]++;
    }
    if (std::any_of(degree.begin(), degree.end(), [](int d) { return d != 2; })) return false;
    if (std::abs(L.graph.total_length() - kTwoPi) > kTolGeom) return false;
    // Single cycle: walk from vertex 0 and count edges visited.
    return suspension_structure(L.graph, full_mask(L.graph)).has_value();
}

Rigid2 unfold_across(const PEComplex& X, int f, int i, int g, int j) {
    const Face& F = X.face(f);
    const Face& G = X.face(g);
    const Vec2 f0 = F.corners[i], f1 = F.corners[(i + 1) % F.size()];
    const Vec2 g0 = G.corners[j], g1 = G.corners[(j + 1) % G.size()];
    const Vec2 fe0 = F.forward[i] ? f0 : f1, fe1 = F.forward[i] ? f1 : f0;
    const Vec2 ge0 = G.forward[j] ? g0 : g1, ge1 = G.forward[j] ? g1 : g0;
    return Rigid2::glue(fe0, fe1, ge0, ge1, F.centroid(), G.centroid());
}

DistanceField::DistanceField(const PEComplex& X, const PointLocation& source, double max_radius)
    : X_(&X), source_(X.canonical(source)), max_radius_(max_radius) {
    if (!(max_radius_ < kInf)) {
        // No geodesic in the truncation is longer than the whole 1-skeleton
        // plus two face diameters.
        double total = 0.0;
        for (const auto& e : X.edges()) total += e.length;
        max_radius_ = total + 4.0;
    }
    const size_t nv = X.vertices().size();
    by_face_.assign(X.faces().size(), {});
    vertex_dist_.assign(nv, kInf);
    arrival_.assign(nv, {-1, -1});
    finalized_.assign(nv, false);
    flat_vertex_.assign(nv, false);
    for (size_t v = 0; v < nv; ++v) flat_vertex_[v] = is_flat_vertex(X, static_cast<int>(v));
    seed_source();
    propagate();
}

int DistanceField::push_window(Window w) {
    if (w.key > max_radius_) return -1;
    const int idx = static_cast<int>(windows_.size());
    by_face_[w.face].push_back(idx);
    heap_.push_back({w.key, 0, idx});
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
    windows_.push_back(std::move(w));
    return idx;
}

void DistanceField::seed_source() {
    const PEComplex& X = *X_;
    switch (source_.kind) {
        case PointLocation::Kind::Face: {
            Window w;
            w.face = source_.id;
            w.src = source_.uv;
            push_window(w);
            break;
        }
        case PointLocation::Kind::Edge: {
            for (int g : X.edge(source_.id).faces) {
                const Face& G = X.face(g);
                for (int j = 0; j < G.size(); ++j) {
                    if (G.loop[j] != source_.id) continue;
                    Window w;
                    w.face = g;
                    w.src = G.edge_point(j, source_.t);
                    push_window(w);
                }
            }
            break;
        }
        case PointLocation::Kind::Vertex: {
            vertex_dist_[source_.id] = 0.0;
            finalized_[source_.id] = true;
            for (auto [g, c] : X.vertex(source_.id).corners) {
                Window w;
                w.face = g;
                w.src = X.face(g).corners[c];
                push_window(w);
            }
            break;
        }
    }
}

void DistanceField::propagate() {
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
        const Event ev = heap_.back();
        heap_.pop_back();
        if (ev.kind == 0) {
            expand(ev.index);
        } else if (!finalized_[ev.index] && ev.key <= vertex_dist_[ev.index]) {
            emit_from_vertex(ev.index);
        }
    }
    heap_.clear();
    heap_.shrink_to_fit();
}

void DistanceField::offer_vertex(int v, double d, int window, int corner) {
    if (d >= vertex_dist_[v] - 1e-12) return;
    vertex_dist_[v] = d;
    arrival_[v] = {window, corner};
    if (flat_vertex_[v] || finalized_[v] || d > max_radius_) return;
    heap_.push_back({d, 1, v});
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
}

void DistanceField::expand(int wi) {
    const PEComplex& X = *X_;
    const Window W = windows_[wi];
    const Face& F = X.face(W.face);
    const int n = F.size();

    for (int c = 0; c < n; ++c) {
        if (W.visible(F.corners[c], kTolGeom))
            offer_vertex(F.verts[c], W.offset + dist(W.src, F.corners[c]), wi, c);
    }

    Vec2 u{}, v{};
    if (W.entry_side >= 0) {
        u = W.a - W.src;
        v = W.b - W.src;
        if (cross(u, v) < 0) std::swap(u, v);
    } else if (W.has_wedge) {
        u = W.wedge_lo;
        v = W.wedge_hi;
    }
    const bool constrained = W.entry_side >= 0 || W.has_wedge;

    for (int j = 0; j < n; ++j) {
        if (j == W.entry_side) continue;
        const Vec2 p0 = F.corners[j], p1 = F.corners[(j + 1) % n];
        const Vec2 d = p1 - p0;
        const double len = norm(d);
        // Rays grazing along this edge never cross it.
        if (std::abs(cross(d, W.src - p0)) <= kTolGeom * len) continue;
        double lo = 0.0, hi = 1.0;
        if (constrained) {
            if (!clip(cross(u, p0 - W.src), cross(u, d), lo, hi)) continue;
            if (!clip(cross(p0 - W.src, v), cross(d, v), lo, hi)) continue;
        }
        if ((hi - lo) * len < kMinWindow) continue;
        const Vec2 A = lerp(p0, p1, lo), B = lerp(p0, p1, hi);
        const int e = F.loop[j];
        for (int g : X.edge(e).faces) {
            const Face& G = X.face(g);
            for (int jj = 0; jj < G.size(); ++jj) {
                if (G.loop[jj] != e || (g == W.face && jj == j)) continue;
                const Rigid2 T = unfold_across(X, W.face, j, g, jj);
                Window child;
                child.face = g;
                child.src = T.apply(W.src);
                child.offset = W.offset;
                child.entry_side = jj;
                child.a = T.apply(A);
                child.b = T.apply(B);
                child.parent = wi;
                child.from_parent = T;
                child.key = W.offset + point_segment_distance(child.src, child.a, child.b);
                push_window(std::move(child));
            }
        }
    }
}

void DistanceField::emit_from_vertex(int v) {
    const PEComplex& X = *X_;
    finalized_[v] = true;
    const auto [wi, c] = arrival_[v];
    const Window& W = windows_[wi];
    const Vec2 corner = X.face(W.face).corners[c];
    const Vec2 back = W.src - corner;
    if (norm(back) < 1e-12) return;
    const LinkGraph L = link_at(X, PointLocation::at_vertex(v), true);
    const GraphPoint u = link_point_of(L, W.face, back / norm(back));
    const auto du = distances_from(L.graph, u);
    for (int k = 0; k < L.graph.edge_count(); ++k) {
        if (!u.is_vertex() && u.edge == k) continue;
        const auto& ed = L.graph.edges[k];
        const double t_lo = std::max(0.0, kPi - du[ed.a]);
        const double t_hi = std::min(ed.length, ed.length + du[ed.b] - kPi);
        if (t_hi - t_lo < 1e-12) continue;
        const auto& info = L.info[k];
        const double th1 = info.base_angle + info.sign * t_lo;
        const double th2 = info.base_angle + info.sign * t_hi;
        Window w;
        w.face = info.face;
        w.src = X.face(info.face).corners[info.corner];
        w.offset = vertex_dist_[v];
        w.has_wedge = true;
        w.wedge_lo = unit(info.sign > 0 ? th1 : th2);
        w.wedge_hi = unit(info.sign > 0 ? th2 : th1);
        w.origin_vertex = v;
        w.key = w.offset;
        push_window(std::move(w));
    }
}

int DistanceField::best_window(int f, Vec2 uv, double* d) const {
    int best = -1;
    double bd = kInf;
    for (int wi : by_face_[f]) {
        const Window& w = windows_[wi];
        const double cand = w.offset + dist(w.src, uv);
        if (cand < bd && w.visible(uv)) {
            bd = cand;
            best = wi;
        }
    }
    if (d) *d = bd;
    return best;
}

double DistanceField::at(int f, Vec2 uv) const {
    double d = kInf;
    best_window(f, uv, &d);
    return d;
}

double DistanceField::at(const PointLocation& x_in) const {
    const PointLocation x = X_->canonical(x_in);
    if (x.kind == PointLocation::Kind::Vertex) return vertex_dist_[x.id];
    double d = kInf;
    for (int f : X_->faces_at(x)) d = std::min(d, at(f, X_->position_in_face(x, f)));
    return d;
}

}  // namespace cat0
