#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat0/flat_structure.hpp"

namespace cat0 {

/// Half of the link circle at a flat point x of S: the directions swept
/// counterclockwise (orientation +1) or clockwise from `start` to -start in
/// the frame of `face`.
struct Semicircle {
    PointLocation x;
    int face = -1;
    Vec2 start{1.0, 0.0};
    int orientation = 1;
    double length = kPi;
};

/// Development of the rays issuing from x in the directions of a semicircle:
/// faces of S laid out in a chart where x is the origin, the boundary line
/// is the first axis and the region is {h >= 0}.
struct HalfPlaneRegion {
    Semicircle tau;
    std::vector<int> faces;
    std::vector<Rigid2> to_chart;  // per entry of `faces`
    bool embedded = true;          // no face placed twice inconsistently
    bool truncated = false;        // development stopped at the frontier
    int samples = 0;
    double max_deviation = 0.0;    // sampled |d_X - d_chart|
    bool certified = false;        // embedded and max_deviation <= tol
};

/// Flows the half-plane out of tau inside S. When `toward_p` (a unit
/// direction in the frame of tau.face) is given, the link distance from it
/// to tau must exceed alpha (PreconditionViolated otherwise). With `certify`,
/// sampled distances are compared with the chart.
HalfPlaneRegion semicircle_halfplane(const PEComplex& X, const SupportSet& S, const Semicircle& tau,
                                     const Vec2* toward_p = nullptr, double alpha = 0.0, bool certify = true,
                                     double tol = kTolGeom);
/// Sampled isometry check of a developed region against its chart.
void certify_region(const PEComplex& X, HalfPlaneRegion& Z, double tol = kTolGeom);

struct HalfPlaneSubcomplex {
    std::vector<int> faces;
    std::vector<int> boundary_squares;
    double strip = 0.0;       // thickness removed below the lowest row
    bool parallel = true;     // square sides parallel to the boundary line
    bool empty() const { return faces.empty(); }
};

/// Squares of the region lying entirely in {h >= 0}, provided the square
/// sides are parallel to the boundary line; empty otherwise.
HalfPlaneSubcomplex maximal_halfplane_subcomplex(const PEComplex& X, const HalfPlaneRegion& Z);

struct HalfPlaneEntry {
    HalfPlaneSubcomplex H;
    PointLocation x;          // boundary point it was flowed from
    double boundary_distance = 0.0;  // min corner distance of its boundary squares to p
    bool near_boundary_ok = true;    // some boundary square meets B(p, 1 + r2)
    bool internal_links_flat = true;
    bool boundary_geodesic = true;
    bool region_certified = true;
    std::vector<std::vector<Vec2>> chart;  // corners of H.faces in the half-plane chart
};

struct Decomposition {
    PointLocation center;
    double r2 = 0.0, alpha = 0.0;
    bool precondition_ok = true;   // fiber at r2 is a union of circles
    std::string precondition_note;
    double link_modulus_beta = kInf;  // isolated-suspension modulus of the S-links near p
    std::vector<HalfPlaneEntry> halfplanes;
    std::vector<int> core;            // W
    std::vector<int> core_outside;    // W faces beyond r2 + sec(pi/8) + 1
    double core_radius_bound = 0.0;
    int candidates = 0;
    bool covering_certified = false;
};

/// Half-plane decomposition S = W + union of H_i around p.
Decomposition decompose(const PEComplex& X, const SupportSet& S, const PointLocation& p, double r2,
                        double alpha = kPi / 16, int directions = 64);

}  // namespace cat0
