#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cat0/geometry.hpp"

namespace cat0 {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finite edge-weighted multigraph; loops and parallel edges allowed.
struct MetricGraph {
    struct Edge {
        int a = 0;
        int b = 0;
        double length = 0.0;
    };
    std::vector<std::string> labels;  // one per vertex
    std::vector<Edge> edges;

    int add_vertex(std::string label);
    int add_edge(int a, int b, double length);
    int vertex_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    double total_length() const;
};

/// Edge subset selecting a subgraph (edges plus their endpoints).
using EdgeMask = std::vector<bool>;
EdgeMask full_mask(const MetricGraph& g);

/// A point of a metric graph: a vertex, or an edge plus arclength from edge.a.
struct GraphPoint {
    int vertex = -1;
    int edge = -1;
    double t = 0.0;

    static GraphPoint at_vertex(int v) { return {v, -1, 0.0}; }
    static GraphPoint on_edge(int e, double t) { return {-1, e, t}; }
    bool is_vertex() const { return vertex >= 0; }
};

/// Resolves edge points within kTolGeom of an endpoint to that vertex.
GraphPoint canonical(const MetricGraph& g, GraphPoint p);
/// Lexicographic (vertex id, edge id, parameter) order; vertices first.
bool lex_less(const GraphPoint& a, const GraphPoint& b);
bool same_point(const MetricGraph& g, GraphPoint a, GraphPoint b, double tol = kTolGeom);

/// Shortest-path distances from `p` to every vertex, using only masked edges
/// (empty mask = all edges). Unreachable vertices get +inf.
std::vector<double> distances_from(const MetricGraph& g, GraphPoint p, const EdgeMask& mask = {});
/// Distance to `q` given the vertex distances of `p`.
double distance_to(const MetricGraph& g, GraphPoint p, const std::vector<double>& from_p, GraphPoint q);
double distance(const MetricGraph& g, GraphPoint p, GraphPoint q, const EdgeMask& mask = {});

struct GirthResult {
    double length = kInf;
    std::vector<int> cycle;  // edge indices of a shortest cycle
};
GirthResult girth(const MetricGraph& g, const EdgeMask& mask = {});

/// Points of the subgraph `Y` at distance exactly pi from `v` in `g`,
/// lexicographically sorted and deduplicated.
std::vector<GraphPoint> antipodal_set(const MetricGraph& g, GraphPoint v, const EdgeMask& Y, double tol = kTolGeom);
/// Diameter in `g` of a finite point set; 0 for fewer than two points.
double diameter(const MetricGraph& g, const std::vector<GraphPoint>& pts);

struct SuspensionDescription {
    GraphPoint pole_a;
    GraphPoint pole_b;
    std::vector<std::vector<int>> arcs;  // edges of each pole-to-pole arc
    int valence() const { return static_cast<int>(arcs.size()); }
};

/// Recognizes Y as a union of i >= 2 internally disjoint arcs of length pi
/// between two poles.
std::optional<SuspensionDescription> suspension_structure(const MetricGraph& g, const EdgeMask& Y,
                                                          double tol = kTolGeom);

/// Nonempty and bridgeless: exactly the supports of integral 1-cycles.
bool is_cycle_support(const MetricGraph& g, const EdgeMask& Y);

}  // namespace cat0
