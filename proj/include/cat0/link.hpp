#pragma once

#include <vector>

#include "cat0/complex.hpp"
#include "cat0/metric_graph.hpp"

namespace cat0 {

/// Space of directions at a point: a metric graph whose edges are the face
/// corners (or face sides) at the point. Along link edge k the direction in
/// the frame of face info[k].face has heading base_angle + sign * t.
struct LinkGraph {
    struct EdgeInfo {
        int face = -1;
        int corner = -1;  // corner index for vertex centers, -1 otherwise
        double base_angle = 0.0;
        int sign = 1;
    };
    PointLocation center;
    MetricGraph graph;
    std::vector<EdgeInfo> info;
    bool partial = false;  // center on the frontier; some directions missing

    /// Mask of link edges coming from faces flagged in `faces`.
    EdgeMask restricted_to(const std::vector<bool>& faces) const;
};

/// Builds the link at `x`. Frontier points throw FrontierPoint unless
/// `allow_frontier`, in which case the partial link is flagged.
LinkGraph link_at(const PEComplex& X, const PointLocation& x, bool allow_frontier = false);

struct FaceDirection {
    int face = -1;
    Vec2 dir{};  // unit vector in face coordinates
};

/// A direction represented by a link point. At a link vertex the frame is
/// taken from the first incident link edge allowed by `mask`.
FaceDirection direction_of(const LinkGraph& L, GraphPoint p, const EdgeMask& mask = {});
/// The link point of a unit direction issuing into `face`. Throws when the
/// direction does not point into that face at the link center.
GraphPoint link_point_of(const LinkGraph& L, int face, Vec2 dir);

}  // namespace cat0
