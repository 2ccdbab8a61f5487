#pragma once

// Independent brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cat0/link.hpp"
#include "cat0/modulus.hpp"

namespace cat0::testing_oracles {

inline MetricGraph cycle_graph(int n, double len) {
    MetricGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex("c" + std::to_string(i));
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, len);
    return g;
}

inline MetricGraph k23(double len) {
    MetricGraph g;
    for (const char* l : {"a", "b", "m0", "m1", "m2"}) g.add_vertex(l);
    for (int m = 2; m < 5; ++m) {
        g.add_edge(0, m, len);
        g.add_edge(1, m, len);
    }
    return g;
}

// Suspension of three points with arcs split at their midpoints.
inline MetricGraph suspension_of_three() {
    MetricGraph g;
    const int n = g.add_vertex("n"), s = g.add_vertex("s");
    for (int k = 0; k < 3; ++k) {
        const int m = g.add_vertex("eq" + std::to_string(k));
        g.add_edge(n, m, kPi / 2);
        g.add_edge(m, s, kPi / 2);
    }
    return g;
}

// Exact all-pairs vertex distances by Floyd-Warshall.
inline std::vector<std::vector<double>> floyd(const MetricGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<double>> D(n, std::vector<double>(n, kInf));
    for (int i = 0; i < n; ++i) D[i][i] = 0.0;
    for (const auto& e : g.edges) {
        D[e.a][e.b] = std::min(D[e.a][e.b], e.length);
        D[e.b][e.a] = std::min(D[e.b][e.a], e.length);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) D[i][j] = std::min(D[i][j], D[i][k] + D[k][j]);
    return D;
}

struct MeshPoint {
    int edge;
    double s;
};

// Brute-force oracle for the modulus on a mesh with an even number of
// segments per edge and spacing at most `step`.
class MeshOracle {
public:
    MeshOracle(const MetricGraph& g, double step) : g_(g), D_(floyd(g)) {
        for (int e = 0; e < g.edge_count(); ++e) {
            int n = static_cast<int>(std::ceil(g.edges[e].length / step));
            n += n % 2;
            segs_.push_back(n);
        }
    }

    std::vector<double> to_vertices(MeshPoint p) const {
        const auto& E = g_.edges[p.edge];
        std::vector<double> d(g_.vertex_count());
        for (int w = 0; w < g_.vertex_count(); ++w) d[w] = std::min(p.s + D_[E.a][w], E.length - p.s + D_[E.b][w]);
        return d;
    }

    double dist(MeshPoint p, const std::vector<double>& dp, MeshPoint q) const {
        const auto& E = g_.edges[q.edge];
        double d = std::min(dp[E.a] + q.s, dp[E.b] + E.length - q.s);
        if (p.edge == q.edge) d = std::min(d, std::abs(p.s - q.s));
        return d;
    }

    std::vector<MeshPoint> points_on(int e) const {
        std::vector<MeshPoint> out;
        for (int k = 0; k <= segs_[e]; ++k) out.push_back({e, g_.edges[e].length * k / segs_[e]});
        return out;
    }

    double step_of(int e) const { return g_.edges[e].length / segs_[e]; }

    // Bridgeless subsets, by connectivity after deleting each edge.
    std::vector<std::vector<bool>> supports() const {
        const int m = g_.edge_count();
        std::vector<std::vector<bool>> out;
        for (unsigned bits = 1; bits < (1u << m); ++bits) {
            std::vector<bool> Y(m);
            for (int e = 0; e < m; ++e) Y[e] = (bits >> e) & 1u;
            bool ok = true;
            for (int e = 0; e < m && ok; ++e) {
                if (!Y[e]) continue;
                std::vector<bool> seen(g_.vertex_count(), false);
                std::vector<int> stack{g_.edges[e].a};
                seen[g_.edges[e].a] = true;
                while (!stack.empty()) {
                    const int u = stack.back();
                    stack.pop_back();
                    for (int f = 0; f < m; ++f) {
                        if (!Y[f] || f == e) continue;
                        const auto& F = g_.edges[f];
                        for (int w : {F.a, F.b})
                            if ((F.a == u || F.b == u) && !seen[w]) {
                                seen[w] = true;
                                stack.push_back(w);
                            }
                    }
                }
                ok = seen[g_.edges[e].b];
            }
            if (ok) out.push_back(Y);
        }
        return out;
    }

    // Pole set of Y, empty when Y is not a suspension. A circle of length
    // 2 pi returns all of its vertices and the flag `circle`.
    std::vector<int> poles(const std::vector<bool>& Y, bool& circle) const {
        circle = false;
        std::vector<int> deg(g_.vertex_count(), 0);
        double total = 0.0;
        for (int e = 0; e < g_.edge_count(); ++e)
            if (Y[e]) {
                ++deg[g_.edges[e].a];
                ++deg[g_.edges[e].b];
                total += g_.edges[e].length;
            }
        std::vector<int> branch, used;
        for (int v = 0; v < g_.vertex_count(); ++v) {
            if (deg[v] > 2) branch.push_back(v);
            if (deg[v] > 0) used.push_back(v);
        }
        if (branch.empty()) {
            circle = std::abs(total - kTwoPi) < 1e-12;
            return circle ? used : std::vector<int>{};
        }
        if (branch.size() != 2) return {};
        // Every arc from the first pole must reach the second with length pi.
        for (int e = 0; e < g_.edge_count(); ++e) {
            if (!Y[e] || (g_.edges[e].a != branch[0] && g_.edges[e].b != branch[0])) continue;
            int at = g_.edges[e].a == branch[0] ? g_.edges[e].b : g_.edges[e].a, prev = e;
            double len = g_.edges[e].length;
            while (at != branch[1]) {
                if (at == branch[0] || deg[at] != 2) return {};
                for (int f = 0; f < g_.edge_count(); ++f)
                    if (Y[f] && f != prev && (g_.edges[f].a == at || g_.edges[f].b == at)) {
                        at = g_.edges[f].a == at ? g_.edges[f].b : g_.edges[f].a;
                        len += g_.edges[f].length;
                        prev = f;
                        break;
                    }
            }
            if (std::abs(len - kPi) > 1e-12) return {};
        }
        return branch;
    }

    double beta(double alpha) const {
        double best = kInf;
        for (const auto& Y : supports()) {
            bool circle = false;
            const auto P = poles(Y, circle);
            std::vector<MeshPoint> ypts;
            for (int e = 0; e < g_.edge_count(); ++e)
                if (Y[e])
                    for (auto q : points_on(e)) ypts.push_back(q);
            for (int e = 0; e < g_.edge_count(); ++e)
                for (MeshPoint v : points_on(e)) {
                    const auto dv = to_vertices(v);
                    if (!P.empty()) {
                        double pd = kInf;
                        if (circle && Y[v.edge]) pd = 0.0;
                        for (int w : P) pd = std::min(pd, dv[w]);
                        if (pd < alpha - 1e-12) continue;
                    }
                    std::vector<MeshPoint> ant;
                    for (auto q : ypts)
                        if (std::abs(dist(v, dv, q) - kPi) <= 0.5 * step_of(q.edge) + 1e-12) ant.push_back(q);
                    if (ant.empty()) continue;
                    double diam = 0.0;
                    for (size_t i = 0; i < ant.size(); ++i) {
                        const auto da = to_vertices(ant[i]);
                        for (size_t j = i + 1; j < ant.size(); ++j) diam = std::max(diam, dist(ant[i], da, ant[j]));
                    }
                    best = std::min(best, diam);
                }
        }
        return best;
    }

private:
    const MetricGraph& g_;
    std::vector<std::vector<double>> D_;
    std::vector<int> segs_;
};

}  // namespace cat0::testing_oracles
