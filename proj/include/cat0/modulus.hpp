#pragma once

#include <optional>
#include <vector>

#include "cat0/metric_graph.hpp"

namespace cat0 {

/// All bridgeless edge subsets of g (the supports of 1-cycles). Throws
/// InvalidInput when g has more than `max_edges` edges.
std::vector<EdgeMask> cycle_supports(const MetricGraph& g, int max_edges = 16);

/// Diameter of Ant(v, Y), or nullopt when the antipodal set is empty.
std::optional<double> antipode_diameter(const MetricGraph& g, GraphPoint v, const EdgeMask& Y);

/// Distance from v to the pole set of a suspension support. For a circle
/// of length 2pi every point of Y is a pole.
double pole_distance(const MetricGraph& g, GraphPoint v, const EdgeMask& Y, const SuspensionDescription& s);

struct SuspensionModulus {
    double alpha = 0.0;
    double beta = kInf;
    struct Witness {
        int graph = -1;
        std::vector<int> support;  // edge indices
        GraphPoint point;
        std::vector<GraphPoint> antipodes;
        double diameter = 0.0;
        bool support_is_suspension = false;
        double pole_distance = kInf;
    };
    std::optional<Witness> witness;
    int supports_examined = 0;
};

/// Largest beta such that for every cycle support Y of a family member and
/// every point v with a nonempty antipodal set in Y, diam Ant(v, Y) < beta
/// forces Y to be a suspension with v closer than alpha to a pole.
/// Throws NotCat1 when a member has girth < 2pi.
SuspensionModulus isolated_suspension_modulus(const std::vector<MetricGraph>& family, double alpha,
                                              int max_edges = 16);

}  // namespace cat0
