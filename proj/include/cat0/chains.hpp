#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cat0/geodesics.hpp"
#include "cat0/link.hpp"

namespace cat0 {

/// Integer 2-chain on the oriented faces of a complex (face index -> coefficient).
/// Zero coefficients are never stored.
struct Chain2 {
    std::map<int, long> coeff;

    void set(int face, long c);
    long at(int face) const;
    Chain2 operator+(const Chain2& o) const;
    Chain2 operator*(long k) const;
    Chain2 operator-() const { return *this * -1; }
};

/// Edge-indexed integer 1-chain, nonzero entries only.
using Chain1 = std::map<int, long>;

Chain1 boundary(const PEComplex& X, const Chain2& c);
/// The part of the boundary not carried by frontier edges.
Chain1 interior_boundary(const PEComplex& X, const Chain2& c);
bool is_relative_cycle(const PEComplex& X, const Chain2& c);

/// Closed subcomplex spanned by the faces with nonzero coefficient.
struct SupportSet {
    std::vector<int> faces;
    std::vector<int> edges;
    std::vector<int> vertices;
    FaceSet mask;  // indexed by face

    bool contains_face(int f) const { return mask[f]; }
    bool contains(const PEComplex& X, const PointLocation& p) const;
};

/// Throws NotACycle when the boundary has a non-frontier part.
SupportSet support(const PEComplex& X, const Chain2& c);
SupportSet support_of_faces(const PEComplex& X, const std::vector<int>& faces);

/// Induced 1-cycle of a chain in the link at p.
struct LinkCycle {
    LinkGraph link;
    std::vector<long> coeff;  // per link edge: coefficient of its face
    bool in_support = false;
    double shortest_cycle = kInf;  // girth of the subgraph with nonzero coefficients
    std::vector<int> shortest_cycle_edges;
};

LinkCycle link_cycle(const PEComplex& X, const Chain2& c, const PointLocation& p);

/// Uniform random points of a face set, weighted by area.
std::vector<PointLocation> sample_points(const PEComplex& X, const std::vector<int>& faces, int count,
                                         std::uint64_t seed);

struct ExtensionFailure {
    PointLocation p, x;
    std::string message;
};

struct ExtensionReport {
    int attempted = 0;
    int succeeded = 0;
    int censored = 0;  // geodesic or extension cut by the truncation
    std::vector<ExtensionFailure> failures;
    double success_rate() const;
};

struct SamplePlan {
    int count = 100;
    std::uint64_t seed = 1;
    std::vector<std::pair<PointLocation, PointLocation>> pairs;  // used instead of random pairs when nonempty
};

/// Extends the geodesic from p through x inside S up to length R for each
/// sampled pair and records where no antipode exists.
ExtensionReport verify_extension_property(const PEComplex& X, const SupportSet& S, const SamplePlan& plan, double R);

}  // namespace cat0
