#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat0/chains.hpp"

namespace cat0 {

struct AreaEstimate {
    double area = 0.0;   // midpoint estimate
    double error = 0.0;  // certified: |true area - area| <= error
    long cells = 0;      // cells classified
    int depth = 0;       // deepest subdivision level used
};

/// Area of {x in S : d(p, x) <= r}. Cells are split level by level until
/// the undecided area is at most 2 * tol; tol <= 0 selects 1e-2 * r^2.
/// Throws TruncationTooSmall when the ball reaches the frontier and
/// SubdivisionLimit when depth `max_depth` does not meet the tolerance.
AreaEstimate ball_area(const DistanceField& field, const SupportSet& S, double r, double tol = -1.0,
                       int max_depth = 12);
/// Same computation on one thread, kept as the reference for the parallel kernel.
AreaEstimate ball_area_serial(const DistanceField& field, const SupportSet& S, double r, double tol = -1.0,
                              int max_depth = 12);

/// Smallest distance from the field's source to a frontier point (+inf when
/// the frontier is not reached within the field's radius).
double frontier_distance(const DistanceField& field);

struct DensityProfile {
    PointLocation center;
    bool center_in_support = false;
    std::vector<double> radii, area, area_error, ratio, ratio_error;
    bool monotone = true;        // consecutive ratios ordered up to error bars
    bool lower_bound_ok = true;  // ratio + error >= pi (meaningful when the center is in S)
    bool equality = true;        // every error bar contains pi
    double limit = 0.0;          // last ratio
    bool limit_increasing = false;  // last ratio above the first beyond error
};

DensityProfile density_profile(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                               const std::vector<double>& radii, double tol_rel = 1e-2);

struct PointClass {
    enum class Kind { Flat, SingularLine, VertexLike, FrontierCensored };
    Kind kind = Kind::Flat;
    int valence = 0;           // pod valence for singular lines
    double link_length = 0.0;  // total length of the link in S
    MetricGraph link;          // link in S
};

const char* to_string(PointClass::Kind k);

PointClass classify_point(const PEComplex& X, const SupportSet& S, const PointLocation& x);

/// Level set {x in S : d(p, x) = r} as a graph, extracted by marching
/// triangles on a per-face lattice and contracted to its nodes of valence
/// other than 2. Pure circles keep one node of valence 2.
struct FiberReport {
    double radius = 0.0;
    MetricGraph graph;
    std::vector<int> valences;               // per graph vertex
    std::vector<PointLocation> locations;    // per graph vertex
    int components = 0;
    int branch_nodes = 0;                    // valence >= 3
    bool all_valence_at_least_two = true;
    int lattice = 0;                         // samples per face side
};

FiberReport fiber_graph(const DistanceField& field, const SupportSet& S, double r, int samples_per_unit = 16);

/// Embedded copy of the ball of radius R in R x tripod, centred on a singular line.
struct BranchCertificate {
    PointLocation center;
    double R = 0.0;
    double found_at_radius = 0.0;  // fiber radius where the branch node appeared
    int line_edge = -1;
    std::vector<int> sheets;       // faces of S at the line edge
    int samples = 0;
    double max_error = 0.0;        // largest |d_X - d_model| over sampled pairs
    bool sheets_flat = true;
    bool verified = false;         // max_error within tolerance and sheets flat
};

/// Looks for a fiber node of valence >= 3 at radii in [r0 + R, r0 + 2R] and
/// verifies an embedded tripod ball around it by comparing distances with
/// the model. Returns nullopt when every fiber is free of branch nodes.
std::optional<BranchCertificate> detect_branch(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                                               double r0, double R, double tol = kTolGeom);

/// Distance of a model point of R x tripod (coordinate t along the line,
/// height h >= 0 in sheet k) to another.
double tripod_model_distance(int k1, double t1, double h1, int k2, double t2, double h2);

/// Angle at x between the direction towards p and the link of S (flat x)
/// or its pole pair (singular-line x).
double conicality(const PEComplex& X, const SupportSet& S, const PointLocation& p, const PointLocation& x);

/// Size of a greedy eps*r separated subset of B(p, r) cap S, greedy over the
/// lattice points of S faces in (face, coordinates) order, starting at p.
int packing_number(const PEComplex& X, const SupportSet& S, const PointLocation& p, double r, double eps,
                   int samples_per_unit = 8);

struct FlatnessVerdict {
    enum class Kind { Flat, NonFlat, Inconclusive };
    Kind kind = Kind::Inconclusive;
    DensityProfile profile;
    std::optional<double> witness_ratio;
    std::optional<PointLocation> witness_point;
    int points_checked = 0;
};

const char* to_string(FlatnessVerdict::Kind k);

/// Flat when every density ratio is pi within error and every vertex, edge
/// midpoint and face centre of S inside the largest ball classifies flat.
FlatnessVerdict flatness_test(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                              const std::vector<double>& radii, double tol_rel = 1e-2);

}  // namespace cat0
