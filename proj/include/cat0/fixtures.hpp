#pragma once

#include <string>
#include <vector>

#include "cat0/chains.hpp"

namespace cat0 {

/// A generated complex with a relative 2-cycle and a flat model chart for
/// each face: face f maps isometrically into the plane numbered sheet[f] by
/// to_model[f]. Sheets are -1 for faces without a chart.
struct Fixture {
    std::string name;
    PEComplex X;
    Chain2 chain;
    std::vector<int> sheet;
    std::vector<Rigid2> to_model;
    std::vector<int> special_vertices;  // cone points, apices or singular-line vertices, by fixture

    Vec2 model_of(int face, Vec2 uv) const { return to_model[face].apply(uv); }
    Vec2 model_of(const PointLocation& p) const;
    int sheet_of(const PointLocation& p) const;
    /// Point of the given sheet at model coordinates m. Throws OutsideFace
    /// when no face of that sheet contains m.
    PointLocation model_point(int sheet_id, Vec2 m) const;
};

/// n x n unit grid centred at the origin, full chain.
Fixture plane_fixture(int n);
/// Three half-planes [-n/2, n/2] x [0, h] (h = max(1, n/2)) glued along y = 0.
/// Sheets 0, 1, 2; coefficients from the integer kernel of the boundary map.
Fixture tripod_times_r_fixture(int n);
/// Two n x n grids sharing the line y = 0; chain = sheet 0.
Fixture two_planes_glued_fixture(int n);
/// Same complex as two_planes_glued; chain = upper half of sheet 0 plus
/// lower half of sheet 1.
Fixture bent_flat_fixture(int n);
/// Two planes, each a triangulated regular k-gon of circumradius `rings`
/// around a common apex, joined by a flat sector of angle pi/2 glued along
/// the ray of direction 0 in each. Chain = both planes. Sheets 0, 1 are the
/// planes (apex at the origin, joining ray along +x), sheet 2 the sector.
Fixture glasses_fixture(int k, int rings = 4);
/// n x n grid with a cone vertex of angle 2pi + theta_i inserted for each
/// theta_i, by opening a vertical cut above the vertex and filling it with
/// a triangulated wedge.
Fixture cone_points_fixture(const std::vector<double>& thetas, int n = 10);
/// m quadrant grids of size n x n glued cyclically around one vertex
/// (cone angle m pi / 2). m = 3 violates the link condition.
Fixture square_cone_fixture(int m, int n);
/// Cone over a circle made of m isosceles triangles with apex angle 2pi/m.
Fixture triangle_cone_fixture(int m);

/// Dispatch by name: plane, tripod_times_r, glasses, two_planes_glued,
/// bent_flat, cone_points (uses `thetas`), three_squares (square cone, m = 3).
Fixture make_fixture(const std::string& name, int size, const std::vector<double>& thetas = {0.1, 0.05});

/// Integer vector c in [-bound, bound]^k with all entries nonzero that makes
/// sum c_i * chains[i] a relative cycle: least L1 norm, first nonzero entry
/// positive, then lexicographically least. Empty when none exists.
std::vector<long> solve_cycle_coefficients(const PEComplex& X, const std::vector<Chain2>& chains, int bound = 2);

}  // namespace cat0
