#pragma once

#include <vector>

#include "cat0/complex.hpp"
#include "cat0/distance_field.hpp"
#include "cat0/link.hpp"

namespace cat0 {

/// A straight piece of a path inside one face, in that face's coordinates.
struct PathSegment {
    int face = -1;
    Vec2 from{};
    Vec2 to{};
    double length() const { return dist(from, to); }
};

/// Piecewise straight path through a corridor of faces. points[k] is the
/// start of segments[k]; points.back() is the end point.
struct GeodesicPath {
    std::vector<PathSegment> segments;
    std::vector<PointLocation> points;
    bool reached_frontier = false;  // extension stopped at the truncation

    double length() const;
    const PointLocation& start() const { return points.front(); }
    const PointLocation& end() const { return points.back(); }
    GeodesicPath reversed() const;
};

struct Crossing {
    PointLocation at;
    double link_distance = 0.0;  // between incoming and outgoing directions
    double margin = 0.0;         // link_distance - pi
};

struct GeodesicCertificate {
    bool is_local_geodesic = true;
    double worst_margin = kInf;  // +inf when there are no crossings
    std::vector<Crossing> crossings;
};

GeodesicCertificate is_local_geodesic(const PEComplex& X, const GeodesicPath& path);

/// Path from the field's source to `q`, reconstructed through its windows.
GeodesicPath trace_back(const DistanceField& field, const PointLocation& q);

/// The geodesic from p to q. Throws TruncationExit when the shortest path
/// inside the truncation touches the frontier at an interior point.
GeodesicPath geodesic(const PEComplex& X, const PointLocation& p, const PointLocation& q);

/// Shortest path length on the epsilon-refined graph: vertices, points every
/// <= eps along edges, and straight chords between points of a common face.
/// Every graph path is a path in X, so this is an upper bound.
class RefinedGraph {
public:
    RefinedGraph(const PEComplex& X, double eps = 0.05);
    double upper_bound(const PointLocation& p, const PointLocation& q) const;
    size_t node_count() const { return nodes_; }

private:
    struct FaceNode {
        int node;
        Vec2 pos;
    };
    const PEComplex* X_;
    size_t nodes_ = 0;
    std::vector<std::vector<FaceNode>> face_nodes_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

/// Subset of faces a ray is allowed to use (the support of a chain).
using FaceSet = std::vector<bool>;

/// Continues straight from `x` in the direction given by a link point, always
/// leaving each crossing through the lexicographically least antipode of the
/// arrival direction inside `S`. Stops after `length` or at the frontier.
/// Throws NoAntipode when some crossing has no antipode in S.
GeodesicPath shoot(const PEComplex& X, const FaceSet& S, const PointLocation& x, int face, Vec2 dir, double length);

/// Prolongs the geodesic `seg` (from p to x in S) inside S until its total
/// length reaches R or the frontier.
GeodesicPath extend_in_subcomplex(const PEComplex& X, const FaceSet& S, const GeodesicPath& seg, double R);

/// The point at parameter ratio * d(p, x) along the geodesic from p to x.
PointLocation contract_toward(const PEComplex& X, const PointLocation& p, double ratio, const PointLocation& x);

/// Point at arclength s along a path.
PointLocation point_along(const PEComplex& X, const GeodesicPath& path, double s);

/// Direction of the path's last segment reversed (pointing back to the start),
/// as a link point at the end.
GraphPoint arrival_direction(const LinkGraph& L, const GeodesicPath& path);

}  // namespace cat0
