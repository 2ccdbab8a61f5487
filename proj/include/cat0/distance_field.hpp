#pragma once

#include <vector>

#include "cat0/complex.hpp"
#include "cat0/metric_graph.hpp"

namespace cat0 {

/// One unfolded image of a (pseudo)source seen through a corridor of faces.
/// Points of `face` inside the visible region are at distance
/// offset + |x - src| along a straight corridor path.
struct Window {
    int face = -1;
    Vec2 src{};
    double offset = 0.0;
    int entry_side = -1;  // loop index of the entry edge, -1 for roots
    Vec2 a{}, b{};        // visible part of the entry edge
    bool has_wedge = false;
    Vec2 wedge_lo{}, wedge_hi{};  // ccw bounding directions for restricted roots
    int parent = -1;
    Rigid2 from_parent;     // parent face coords -> this face coords
    int origin_vertex = -1;  // pseudo-source vertex for roots emitted at a vertex
    double key = 0.0;        // lower bound of the distance over the window

    bool visible(Vec2 x, double tol = kTolGeom) const;
};

/// Exact distance function d(p, .) on a CAT(0) complex, stored per face as a
/// lower envelope of unfolded Euclidean distances. Built by propagating
/// windows face by face in order of their distance lower bound; vertices
/// with non-flat links become pseudo-sources emitting only the directions
/// at link distance >= pi from the arrival direction.
class DistanceField {
public:
    DistanceField(const PEComplex& X, const PointLocation& source, double max_radius = kInf);

    const PEComplex& complex() const { return *X_; }
    const PointLocation& source() const { return source_; }
    double max_radius() const { return max_radius_; }

    /// Distance to a point of face f given by intrinsic coordinates.
    double at(int f, Vec2 uv) const;
    double at(const PointLocation& x) const;
    double at_vertex(int v) const { return vertex_dist_[v]; }
    /// Best window realizing the distance at (f, uv), or -1.
    int best_window(int f, Vec2 uv, double* d = nullptr) const;

    const std::vector<Window>& windows() const { return windows_; }
    const std::vector<int>& windows_in(int f) const { return by_face_[f]; }
    /// Arrival window and corner for a pseudo-source vertex.
    std::pair<int, int> arrival(int v) const { return arrival_[v]; }

    size_t window_count() const { return windows_.size(); }

private:
    void seed_source();
    void propagate();
    void expand(int w);
    void emit_from_vertex(int v);
    int push_window(Window w);
    void offer_vertex(int v, double d, int window, int corner);

    const PEComplex* X_;
    PointLocation source_;
    double max_radius_;
    std::vector<Window> windows_;
    std::vector<std::vector<int>> by_face_;
    std::vector<double> vertex_dist_;
    std::vector<std::pair<int, int>> arrival_;
    std::vector<bool> finalized_;
    std::vector<bool> flat_vertex_;
    struct Event {
        double key;
        int kind;  // 0 window, 1 vertex
        int index;
        bool operator>(const Event& o) const {
            if (key != o.key) return key > o.key;
            if (kind != o.kind) return kind > o.kind;
            return index > o.index;
        }
    };
    std::vector<Event> heap_;
};

/// True when the vertex link is a single cycle of length 2pi (geodesics pass
/// straight through such a vertex).
bool is_flat_vertex(const PEComplex& X, int v);

/// Rigid motion carrying face f's coordinates to face g's across the shared
/// loop edges i (of f) and j (of g).
Rigid2 unfold_across(const PEComplex& X, int f, int i, int g, int j);

}  // namespace cat0
