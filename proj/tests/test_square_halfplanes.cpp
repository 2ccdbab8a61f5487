#include <gtest/gtest.h>

#include <cmath>

#include "cat0/chains.hpp"
#include "cat0/fixtures.hpp"
#include "cat0/halfplanes.hpp"

using namespace cat0;

namespace {

struct Case {
    Fixture F;
    SupportSet S;
    explicit Case(Fixture f) : F(std::move(f)), S(support(F.X, F.chain)) {}

    // Semicircle at model point m of sheet 0 whose diameter has model heading `angle`.
    Semicircle tau(Vec2 m, double angle) const {
        const PointLocation x = F.model_point(0, m);
        int face = -1;
        for (int f : F.X.faces_at(x))
            if (F.sheet[f] == 0 && S.mask[f] && (face < 0 || f < face)) face = f;
        const Vec2 dir = F.to_model[face].inverse().apply_dir(unit(angle));
        return {x, face, dir, 1, kPi};
    }
};

double model_face_max_dist(const Fixture& F, int f, Vec2 p) {
    double d = 0.0;
    for (const Vec2& c : F.X.face(f).corners) d = std::max(d, dist(F.model_of(f, c), p));
    return d;
}

double model_face_min_dist(const Fixture& F, int f, Vec2 p) {
    double d = kInf;
    for (const Vec2& c : F.X.face(f).corners) d = std::min(d, dist(F.model_of(f, c), p));
    return d;
}

}  // namespace

TEST(Semicircle, PlaneRegionIsCertifiedHalfPlane) {
    const Case c(plane_fixture(12));
    const HalfPlaneRegion Z = semicircle_halfplane(c.F.X, c.S, c.tau({0.25, 0.3}, 0.0));
    EXPECT_TRUE(Z.embedded);
    EXPECT_TRUE(Z.truncated);
    EXPECT_TRUE(Z.certified);
    EXPECT_LE(Z.max_deviation, kTolGeom);
    EXPECT_GE(Z.samples, 8);
    // Exactly the faces meeting y > 0.3 in the model.
    int expected = 0;
    for (size_t f = 0; f < c.F.X.faces().size(); ++f) {
        double top = -kInf;
        for (const Vec2& v : c.F.X.face(f).corners) top = std::max(top, c.F.model_of(static_cast<int>(f), v).y);
        expected += top > 0.3 + 1e-9;
    }
    EXPECT_EQ(static_cast<int>(Z.faces.size()), expected);
}

TEST(Semicircle, StripRemovalKeepsWholeSquares) {
    const Case c(plane_fixture(12));
    const HalfPlaneRegion Z = semicircle_halfplane(c.F.X, c.S, c.tau({0.25, 0.3}, 0.0));
    const HalfPlaneSubcomplex H = maximal_halfplane_subcomplex(c.F.X, Z);
    ASSERT_FALSE(H.empty());
    EXPECT_TRUE(H.parallel);
    EXPECT_NEAR(H.strip, 0.7, 1e-9);
    EXPECT_EQ(H.boundary_squares.size(), 12u);
    for (int f : H.faces) {
        double low = kInf;
        for (const Vec2& v : c.F.X.face(f).corners) low = std::min(low, c.F.model_of(f, v).y);
        EXPECT_GE(low, 1.0 - 1e-9);
    }
    for (int f : H.boundary_squares) {
        double low = kInf;
        for (const Vec2& v : c.F.X.face(f).corners) low = std::min(low, c.F.model_of(f, v).y);
        EXPECT_NEAR(low, 1.0, 1e-9);
    }
}

TEST(Semicircle, IrrationalSlopeHasNoSquareSubcomplex) {
    const Case c(plane_fixture(12));
    const HalfPlaneRegion Z = semicircle_halfplane(c.F.X, c.S, c.tau({0.25, 0.3}, std::atan(std::sqrt(2.0))));
    EXPECT_TRUE(Z.certified);
    const HalfPlaneSubcomplex H = maximal_halfplane_subcomplex(c.F.X, Z);
    EXPECT_TRUE(H.empty());
    EXPECT_FALSE(H.parallel);
}

TEST(Semicircle, BentFlatCrossesTheGlueLine) {
    const Case c(bent_flat_fixture(12));
    const HalfPlaneRegion Z = semicircle_halfplane(c.F.X, c.S, c.tau({0.25, 1.5}, kPi / 2));
    EXPECT_TRUE(Z.embedded);
    EXPECT_TRUE(Z.certified);
    bool sheet0 = false, sheet1 = false;
    for (int f : Z.faces) {
        sheet0 |= c.F.sheet[f] == 0;
        sheet1 |= c.F.sheet[f] == 1;
    }
    EXPECT_TRUE(sheet0 && sheet1);
}

TEST(Semicircle, Preconditions) {
    const Case c(plane_fixture(12));
    const Semicircle t = c.tau({0.25, 0.3}, 0.0);
    // The direction (0, -1) is pi/2 from the upper semicircle.
    const Vec2 down = c.F.to_model[t.face].inverse().apply_dir({0.0, -1.0});
    EXPECT_NO_THROW(semicircle_halfplane(c.F.X, c.S, t, &down, kPi / 4, false));
    const Vec2 tilted = c.F.to_model[t.face].inverse().apply_dir(unit(-0.1));
    EXPECT_THROW(semicircle_halfplane(c.F.X, c.S, t, &tilted, kPi / 8, false), Error);

    const Case tri(tripod_times_r_fixture(12));
    Semicircle on_line = tri.tau({0.25, 0.0}, 0.0);
    EXPECT_THROW(semicircle_halfplane(tri.F.X, tri.S, on_line), Error);
}

TEST(Decompose, PlaneCertificate) {
    const Case c(plane_fixture(20));
    const Vec2 p{0.3, 0.4};
    const double r2 = 3.0;
    const Decomposition D = decompose(c.F.X, c.S, c.F.model_point(0, p), r2);
    EXPECT_TRUE(D.precondition_ok);
    EXPECT_TRUE(D.covering_certified);
    EXPECT_GE(D.halfplanes.size(), 4u);
    EXPECT_EQ(D.link_modulus_beta, kInf);
    const double bound = r2 + 1.0 / std::cos(kPi / 8) + 1.0;
    EXPECT_NEAR(D.core_radius_bound, bound, 1e-15);
    for (int f : D.core) EXPECT_LE(model_face_max_dist(c.F, f, p), bound + 1e-9);
    for (const auto& h : D.halfplanes) {
        double nearest = kInf;
        for (int f : h.H.boundary_squares) nearest = std::min(nearest, model_face_min_dist(c.F, f, p));
        EXPECT_LE(nearest, 1.0 + r2 + 1e-9);
        EXPECT_NEAR(h.boundary_distance, nearest, 1e-9);
        EXPECT_TRUE(h.region_certified);
    }
    // The half-planes and the core cover the support.
    std::vector<bool> covered(c.F.X.faces().size(), false);
    for (const auto& h : D.halfplanes)
        for (int f : h.H.faces) covered[f] = true;
    for (int f : D.core) covered[f] = true;
    for (int f : c.S.faces) EXPECT_TRUE(covered[f]);
}

TEST(Decompose, BentFlatHasSeveralHalfPlanes) {
    const Case c(bent_flat_fixture(20));
    const Decomposition D = decompose(c.F.X, c.S, c.F.model_point(0, {0.3, 0.4}), 3.0);
    EXPECT_TRUE(D.covering_certified);
    EXPECT_GE(D.halfplanes.size(), 2u);
}

TEST(Decompose, TripodFails) {
    const Case c(tripod_times_r_fixture(20));
    const Decomposition D = decompose(c.F.X, c.S, PointLocation::at_vertex(c.F.special_vertices[10]), 3.0);
    EXPECT_FALSE(D.precondition_ok);
    EXPECT_NE(D.precondition_note.find("2 branch nodes"), std::string::npos);
    EXPECT_FALSE(D.covering_certified);
}

TEST(Decompose, InputChecks) {
    const Case gl(glasses_fixture(8, 6));
    EXPECT_THROW(decompose(gl.F.X, gl.S, gl.F.model_point(0, {0.5, 0.5}), 1.0), Error);
    const Case small(plane_fixture(8));
    EXPECT_THROW(decompose(small.F.X, small.S, small.F.model_point(0, {0.3, 0.4}), 3.0), Error);
    const Case c(plane_fixture(20));
    EXPECT_THROW(decompose(c.F.X, c.S, c.F.model_point(0, {0.3, 0.4}), 3.0, kPi / 4), Error);
}
