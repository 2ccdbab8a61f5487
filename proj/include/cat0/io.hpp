#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cat0/chains.hpp"
#include "cat0/complex.hpp"
#include "cat0/metric_graph.hpp"

namespace cat0 {

using Json = nlohmann::json;

Json load_json(const std::string& path);
/// Writes with two-space indentation, sorted keys and a trailing newline.
void save_json(const std::string& path, const Json& j);
std::string dump_json(const Json& j);

/// Accepts a JSON number or a decimal string.
double json_number(const Json& j, const std::string& what);
/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
Json json_real(double x);
/// Parses a decimal string; InvalidInput on trailing garbage.
double parse_number(const std::string& s, const std::string& what);
std::vector<double> parse_number_list(const std::string& s, const std::string& what);

ComplexSpec complex_spec_from_json(const Json& j);
Json complex_to_json(const PEComplex& X);
PEComplex complex_from_json(const Json& j);

Chain2 chain_from_json(const PEComplex& X, const Json& j);
Json chain_to_json(const PEComplex& X, const Chain2& c);

MetricGraph graph_from_json(const Json& j);
Json graph_to_json(const MetricGraph& g);
/// A single graph object, {"graphs": [...]} or a bare array.
std::vector<MetricGraph> graph_family_from_json(const Json& j);

/// `v:<vertex>`, `e:<edge>:<t>` or `f:<face>:<u>,<v>`; the result is canonical.
PointLocation parse_location(const PEComplex& X, const std::string& s);
std::string location_string(const PEComplex& X, const PointLocation& p);
Json location_to_json(const PEComplex& X, const PointLocation& p);
Json graph_point_to_json(const MetricGraph& g, const GraphPoint& p);

}  // namespace cat0
