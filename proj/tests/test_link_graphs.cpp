#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "cat0/fixtures.hpp"
#include "cat0/link.hpp"
#include "cat0/modulus.hpp"
#include "oracles.hpp"

using namespace cat0;
using namespace cat0::testing_oracles;

TEST(Girth, K33MatchesExhaustiveCycles) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        MetricGraph g;
        for (int i = 0; i < 6; ++i) g.add_vertex("k" + std::to_string(i));
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j) g.add_edge(i, j, U(rng));
        double best = kInf;
        std::vector<bool> used(g.edge_count(), false);
        std::function<void(int, int, double)> walk = [&](int start, int at, double len) {
            for (int e = 0; e < g.edge_count(); ++e) {
                if (used[e] || (g.edges[e].a != at && g.edges[e].b != at)) continue;
                const int nxt = g.edges[e].a == at ? g.edges[e].b : g.edges[e].a;
                if (nxt == start) {
                    best = std::min(best, len + g.edges[e].length);
                    continue;
                }
                used[e] = true;
                walk(start, nxt, len + g.edges[e].length);
                used[e] = false;
            }
        };
        for (int s = 0; s < 6; ++s) walk(s, s, 0.0);
        const GirthResult r = girth(g);
        EXPECT_NEAR(r.length, best, 1e-12);
        double cyc = 0.0;
        for (int e : r.cycle) cyc += g.edges[e].length;
        EXPECT_NEAR(cyc, r.length, 1e-12);
    }
}

TEST(Girth, LoopsAndParallelEdges) {
    MetricGraph g;
    g.add_vertex("x");
    g.add_vertex("y");
    g.add_edge(0, 1, 1.0);
    g.add_edge(0, 1, 2.5);
    g.add_edge(1, 1, 3.0);
    EXPECT_NEAR(girth(g).length, 3.0, 1e-12);
    EXPECT_EQ(girth(cycle_graph(1, 5.0)).length, 5.0);
    MetricGraph tree = cycle_graph(3, 1.0);
    tree.edges.pop_back();
    EXPECT_EQ(girth(tree).length, kInf);
}

TEST(Antipodes, MatchMeshOracle) {
    const MetricGraph g = k23(kPi / 2);
    const EdgeMask Y = full_mask(g);
    const MeshOracle mesh(g, 1e-3);
    for (double s : {0.1, 0.4, kPi / 4, 1.2}) {
        const GraphPoint v = GraphPoint::on_edge(0, s);
        const auto ant = antipodal_set(g, v, Y);
        const MeshPoint mv{0, s};
        const auto dv = mesh.to_vertices(mv);
        std::vector<MeshPoint> hits;
        for (int e = 0; e < g.edge_count(); ++e)
            for (auto q : mesh.points_on(e))
                if (std::abs(mesh.dist(mv, dv, q) - kPi) <= 0.5 * mesh.step_of(e) + 1e-12) hits.push_back(q);
        ASSERT_FALSE(ant.empty());
        // Every exact antipode has a mesh witness within one step and vice versa.
        for (const auto& a : ant) {
            const MeshPoint ma = a.is_vertex() ? MeshPoint{-1, 0.0} : MeshPoint{a.edge, a.t};
            bool found = false;
            for (auto q : hits) {
                if (a.is_vertex()) {
                    const auto& E = g.edges[q.edge];
                    found |= (E.a == a.vertex && q.s <= 1e-3) || (E.b == a.vertex && E.length - q.s <= 1e-3);
                } else {
                    found |= q.edge == ma.edge && std::abs(q.s - ma.s) <= 1e-3;
                }
            }
            EXPECT_TRUE(found) << "s=" << s;
        }
        for (auto q : hits) {
            bool found = false;
            for (const auto& a : ant) found |= distance(g, a, GraphPoint::on_edge(q.edge, q.s)) <= 1e-3;
            EXPECT_TRUE(found) << "s=" << s;
        }
    }
}

TEST(Antipodes, CircleOfLengthTwoPiIsPointwise) {
    const MetricGraph g = cycle_graph(4, kPi / 2);
    const auto ant = antipodal_set(g, GraphPoint::on_edge(1, 0.3), full_mask(g));
    ASSERT_EQ(ant.size(), 1u);
    EXPECT_EQ(ant[0].edge, 3);
    EXPECT_NEAR(ant[0].t, 0.3, 1e-12);
}

TEST(Suspension, RecognizesThetaAndRejectsOthers) {
    const MetricGraph g = k23(kPi / 2);
    const auto s = suspension_structure(g, full_mask(g));
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->valence(), 3);
    const MetricGraph c = cycle_graph(4, kPi / 2);
    ASSERT_TRUE(suspension_structure(c, full_mask(c)).has_value());
    EXPECT_EQ(suspension_structure(c, full_mask(c))->valence(), 2);
    EXPECT_FALSE(suspension_structure(k23(0.6 * kPi), full_mask(g)).has_value());
    EXPECT_FALSE(suspension_structure(cycle_graph(5, 0.5), full_mask(cycle_graph(5, 0.5))).has_value());
}

TEST(CycleSupports, CountsOnSmallGraphs) {
    // Bridgeless subsets of K_{2,3}: three 4-cycles and the whole graph.
    EXPECT_EQ(cycle_supports(k23(1.0)).size(), 4u);
    EXPECT_EQ(cycle_supports(cycle_graph(5, 1.0)).size(), 1u);
    MetricGraph big = cycle_graph(17, 1.0);
    EXPECT_THROW(cycle_supports(big), Error);
}

TEST(Modulus, StandardFamilyMatchesMeshOracle) {
    const std::vector<MetricGraph> family{cycle_graph(4, kPi / 2), k23(kPi / 2), suspension_of_three()};
    const double alpha = kPi / 4;
    const SuspensionModulus m = isolated_suspension_modulus(family, alpha);
    double oracle = kInf;
    for (const auto& g : family) oracle = std::min(oracle, MeshOracle(g, 1e-3).beta(alpha));
    EXPECT_NEAR(m.beta, oracle, 1e-3);
    EXPECT_NEAR(m.beta, 2 * alpha, 1e-9);
    ASSERT_TRUE(m.witness.has_value());
    EXPECT_TRUE(m.witness->support_is_suspension);
    EXPECT_GE(m.witness->pole_distance, alpha - 1e-9);
}

TEST(Modulus, FlatCircleIsInfinite) {
    const SuspensionModulus m = isolated_suspension_modulus({cycle_graph(3, kTwoPi / 3)}, kPi / 4);
    EXPECT_EQ(m.beta, kInf);
    EXPECT_FALSE(m.witness.has_value());
}

TEST(Modulus, LongCircleIsFinite) {
    const std::vector<MetricGraph> family{cycle_graph(4, kPi / 2), cycle_graph(3, (kTwoPi + 0.5) / 3)};
    const SuspensionModulus m = isolated_suspension_modulus(family, kPi / 4);
    ASSERT_TRUE(m.witness.has_value());
    EXPECT_EQ(m.witness->graph, 1);
    EXPECT_FALSE(m.witness->support_is_suspension);
    EXPECT_NEAR(m.beta, 0.5, 1e-9);
    EXPECT_NEAR(MeshOracle(family[1], 1e-3).beta(kPi / 4), 0.5, 1e-3);
}

TEST(Modulus, NondecreasingInAlpha) {
    const std::vector<MetricGraph> family{k23(kPi / 2), cycle_graph(4, kPi / 2)};
    double prev = 0.0;
    for (double a = 0.05; a < kPi / 2; a += 0.1) {
        const double b = isolated_suspension_modulus(family, a).beta;
        EXPECT_GE(b, prev - 1e-12);
        prev = b;
    }
}

TEST(Modulus, RejectsShortCycles) {
    EXPECT_THROW(isolated_suspension_modulus({cycle_graph(3, 1.0)}, 0.3), Error);
}

TEST(Links, PlaneVertexAndEdge) {
    const Fixture F = plane_fixture(4);
    const int v = *F.X.vertex_index("v2_2");
    const LinkGraph L = link_at(F.X, PointLocation::at_vertex(v));
    EXPECT_EQ(L.graph.edge_count(), 4);
    EXPECT_NEAR(L.graph.total_length(), kTwoPi, 1e-12);
    const LinkGraph E = link_at(F.X, PointLocation::on_edge(F.X.vertex(v).edges[0], 0.5));
    EXPECT_EQ(E.graph.vertex_count(), 2);
    EXPECT_NEAR(girth(E.graph).length, kTwoPi, 1e-12);
    EXPECT_THROW(link_at(F.X, PointLocation::at_vertex(*F.X.vertex_index("v0_0"))), Error);
}

TEST(Links, TripodLineIsSuspensionOfThree) {
    const Fixture F = tripod_times_r_fixture(6);
    const LinkGraph L = link_at(F.X, PointLocation::at_vertex(*F.X.vertex_index("v3_0")));
    const auto s = suspension_structure(L.graph, full_mask(L.graph));
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->valence(), 3);
}

TEST(Links, DirectionRoundTrip) {
    const Fixture F = plane_fixture(4);
    const LinkGraph L = link_at(F.X, PointLocation::at_vertex(*F.X.vertex_index("v2_2")));
    for (int e = 0; e < L.graph.edge_count(); ++e)
        for (double t : {0.2, 0.7, 1.3}) {
            const GraphPoint p = GraphPoint::on_edge(e, t);
            const FaceDirection d = direction_of(L, p);
            const GraphPoint q = link_point_of(L, d.face, d.dir);
            EXPECT_TRUE(same_point(L.graph, p, q));
        }
}
