#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cat0/chains.hpp"
#include "cat0/fixtures.hpp"
#include "cat0/geodesics.hpp"

using namespace cat0;

namespace {

// Distance in R x tripod between (sheet, t, h) points.
double tripod_oracle(int k1, Vec2 a, int k2, Vec2 b) {
    if (k1 == k2) return dist(a, b);
    return std::hypot(a.x - b.x, a.y + b.y);
}

// Distance on a cone of total angle `total` between polar points.
double cone_oracle(double r1, double th1, double r2, double th2, double total) {
    double phi = std::fmod(std::abs(th1 - th2), total);
    phi = std::min(phi, total - phi);
    return std::sqrt(r1 * r1 + r2 * r2 - 2 * r1 * r2 * std::cos(std::min(kPi, phi)));
}

std::vector<bool> all_faces(const PEComplex& X) { return std::vector<bool>(X.faces().size(), true); }

}  // namespace

TEST(Geodesic, InsideOneSquare) {
    const Fixture F = plane_fixture(4);
    const PointLocation p = F.X.locate(5, {0.2, 0.3}), q = F.X.locate(5, {0.7, 0.9});
    const GeodesicPath g = geodesic(F.X, p, q);
    ASSERT_EQ(g.segments.size(), 1u);
    EXPECT_NEAR(g.length(), std::hypot(0.5, 0.6), 1e-12);
    EXPECT_TRUE(is_local_geodesic(F.X, g).is_local_geodesic);
}

TEST(Geodesic, PlaneMatchesEuclid) {
    const Fixture F = plane_fixture(10);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-4.9, 4.9);
    for (int i = 0; i < 100; ++i) {
        const Vec2 a{U(rng), U(rng)}, b{U(rng), U(rng)};
        const GeodesicPath g = geodesic(F.X, F.model_point(0, a), F.model_point(0, b));
        EXPECT_NEAR(g.length(), dist(a, b), 1e-9);
        const GeodesicCertificate c = is_local_geodesic(F.X, g);
        EXPECT_TRUE(c.is_local_geodesic);
        EXPECT_GE(c.worst_margin, -1e-9);
        // Every path point lies on the model segment.
        for (const auto& pt : g.points) {
            const Vec2 m = F.model_of(pt);
            EXPECT_NEAR(std::abs(cross(b - a, m - a)) / dist(a, b), 0.0, 1e-9);
        }
    }
}

TEST(Geodesic, TripodAcrossSheets) {
    const Fixture F = tripod_times_r_fixture(12);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> T(-4.0, 4.0), H(0.0, 4.0);
    for (int i = 0; i < 60; ++i) {
        const int k1 = static_cast<int>(rng() % 3), k2 = static_cast<int>(rng() % 3);
        const Vec2 a{T(rng), H(rng)}, b{T(rng), H(rng)};
        const GeodesicPath g = geodesic(F.X, F.model_point(k1, a), F.model_point(k2, b));
        EXPECT_NEAR(g.length(), tripod_oracle(k1, a, k2, b), 1e-9);
        EXPECT_TRUE(is_local_geodesic(F.X, g).is_local_geodesic);
    }
}

TEST(Geodesic, FiveSquareConeThroughVertex) {
    const Fixture F = square_cone_fixture(5, 6);
    const Vec2 a = unit(kPi / 4);
    const PointLocation p = F.model_point(0, a), q = F.model_point(2, a);
    const GeodesicPath g = geodesic(F.X, p, q);
    EXPECT_NEAR(g.length(), 2.0, 1e-9);
    bool through_vertex = false;
    for (const auto& pt : g.points)
        through_vertex |= pt.kind == PointLocation::Kind::Vertex && pt.id == F.special_vertices[0];
    EXPECT_TRUE(through_vertex);
    const GeodesicCertificate c = is_local_geodesic(F.X, g);
    EXPECT_TRUE(c.is_local_geodesic);
    EXPECT_GE(c.worst_margin, -1e-9);
}

TEST(Geodesic, FiveSquareConeMatchesConeFormula) {
    const Fixture F = square_cone_fixture(5, 6);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> R(0.1, 5.0), A(0.0, kPi / 2);
    for (int i = 0; i < 60; ++i) {
        const int q1 = static_cast<int>(rng() % 5), q2 = static_cast<int>(rng() % 5);
        const double r1 = R(rng), t1 = A(rng), r2 = R(rng), t2 = A(rng);
        const GeodesicPath g = geodesic(F.X, F.model_point(q1, unit(t1) * r1), F.model_point(q2, unit(t2) * r2));
        EXPECT_NEAR(g.length(), cone_oracle(r1, q1 * kPi / 2 + t1, r2, q2 * kPi / 2 + t2, 5 * kPi / 2), 1e-9);
    }
}

TEST(Geodesic, RefinedGraphIsAnUpperBound) {
    const Fixture F = plane_fixture(10);
    const RefinedGraph rg(F.X, 0.05);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-4.9, 4.9);
    for (int i = 0; i < 50; ++i) {
        const Vec2 a{U(rng), U(rng)}, b{U(rng), U(rng)};
        const PointLocation p = F.model_point(0, a), q = F.model_point(0, b);
        const double ub = rg.upper_bound(p, q);
        const double len = geodesic(F.X, p, q).length();
        EXPECT_LE(len, ub + 1e-12);
        EXPECT_LE(ub, 1.02 * len + 1e-12);
    }
}

TEST(LocalGeodesic, DetectsBend) {
    const Fixture F = plane_fixture(4);
    const PointLocation p = F.model_point(0, {0.5, 0.2}), x = F.model_point(0, {1.0, 0.5}),
                        q = F.model_point(0, {1.5, 0.2});
    const GeodesicPath a = geodesic(F.X, p, x), b = geodesic(F.X, x, q);
    GeodesicPath bent = a;
    bent.segments.insert(bent.segments.end(), b.segments.begin(), b.segments.end());
    bent.points.insert(bent.points.end(), b.points.begin() + 1, b.points.end());
    const GeodesicCertificate c = is_local_geodesic(F.X, bent);
    EXPECT_FALSE(c.is_local_geodesic);
    // Turning angle at x is 2 * atan(0.3 / 0.5).
    EXPECT_NEAR(c.worst_margin, -(kPi - 2 * std::atan2(0.5, 0.3)), 1e-9);
}

TEST(Extension, PlaneContinuesStraight) {
    const Fixture F = plane_fixture(12);
    const Vec2 a{0.3, -0.2}, b{1.7, 0.9};
    const GeodesicPath seg = geodesic(F.X, F.model_point(0, a), F.model_point(0, b));
    const GeodesicPath ext = extend_in_subcomplex(F.X, all_faces(F.X), seg, 4.0);
    EXPECT_NEAR(ext.length(), 4.0, 1e-9);
    const Vec2 expect = a + (b - a) * (4.0 / dist(a, b));
    EXPECT_NEAR(dist(F.model_of(ext.end()), expect), 0.0, 1e-9);
    EXPECT_TRUE(is_local_geodesic(F.X, ext).is_local_geodesic);
}

TEST(Extension, TripodCrossesTheLineGeodesically) {
    const Fixture F = tripod_times_r_fixture(12);
    const SupportSet S = support(F.X, F.chain);
    const Vec2 a{0.2, 1.5}, b{0.7, 0.5};
    const GeodesicPath seg = geodesic(F.X, F.model_point(0, a), F.model_point(0, b));
    const GeodesicPath ext = extend_in_subcomplex(F.X, S.mask, seg, 3.5);
    EXPECT_NEAR(ext.length(), 3.5, 1e-9);
    EXPECT_TRUE(is_local_geodesic(F.X, ext).is_local_geodesic);
    const int k = F.sheet_of(ext.end());
    ASSERT_GE(k, 0);
    EXPECT_NEAR(tripod_oracle(0, a, k, F.model_of(ext.end())), 3.5, 1e-9);
}

TEST(Extension, HalfPlaneHasNoAntipodeAtBoundary) {
    const Fixture F = plane_fixture(10);
    std::vector<int> upper;
    for (size_t f = 0; f < F.X.faces().size(); ++f)
        if (F.model_of(static_cast<int>(f), F.X.face(f).centroid()).y > 0) upper.push_back(static_cast<int>(f));
    const SupportSet H = support_of_faces(F.X, upper);
    const GeodesicPath seg = geodesic(F.X, F.model_point(0, {0.3, 1.5}), F.model_point(0, {0.8, 0.0}));
    try {
        extend_in_subcomplex(F.X, H.mask, seg, 3.0);
        FAIL() << "expected NoAntipode";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoAntipode);
    }
    // Interior points of the half-plane extend normally.
    const GeodesicPath inner = geodesic(F.X, F.model_point(0, {0.3, 1.5}), F.model_point(0, {0.8, 2.0}));
    EXPECT_NEAR(extend_in_subcomplex(F.X, H.mask, inner, 3.0).length(), 3.0, 1e-9);
}

TEST(Extension, StopsAtFrontier) {
    const Fixture F = plane_fixture(4);
    const GeodesicPath seg = geodesic(F.X, F.model_point(0, {0.0, 0.1}), F.model_point(0, {1.0, 0.1}));
    const GeodesicPath ext = extend_in_subcomplex(F.X, all_faces(F.X), seg, 10.0);
    EXPECT_TRUE(ext.reached_frontier);
    EXPECT_NEAR(ext.length(), 2.0, 1e-9);
}

TEST(Contraction, ScalesDistance) {
    const Fixture F = tripod_times_r_fixture(12);
    const Vec2 a{0.2, 1.5}, b{-1.3, 2.5};
    const PointLocation p = F.model_point(0, a), x = F.model_point(1, b);
    const double d = tripod_oracle(0, a, 1, b);
    for (double ratio : {0.25, 0.5, 0.9, 1.0}) {
        const PointLocation y = contract_toward(F.X, p, ratio, x);
        EXPECT_NEAR(geodesic(F.X, p, y).length(), ratio * d, 1e-9);
        EXPECT_NEAR(geodesic(F.X, y, x).length(), (1 - ratio) * d, 1e-9);
    }
}
