#include <algorithm>
#include <array>
#include <cmath>

#include "cat0/flat_structure.hpp"

namespace cat0 {

namespace {

struct Cell {
    int face = -1;
    std::array<Vec2, 4> c{};
    int n = 4;

    double area() const {
        double a = 0.0;
        for (int i = 0; i < n; ++i) a += cross(c[i], c[(i + 1) % n]);
        return 0.5 * std::abs(a);
    }
    Vec2 center() const {
        Vec2 s{};
        for (int i = 0; i < n; ++i) s = s + c[i];
        return s / n;
    }
    void split(std::vector<Cell>& out) const {
        if (n == 4) {
            const Vec2 m01 = lerp(c[0], c[1], 0.5), m12 = lerp(c[1], c[2], 0.5), m23 = lerp(c[2], c[3], 0.5),
                       m30 = lerp(c[3], c[0], 0.5), ctr = center();
            out.push_back({face, {c[0], m01, ctr, m30}, 4});
            out.push_back({face, {m01, c[1], m12, ctr}, 4});
            out.push_back({face, {ctr, m12, c[2], m23}, 4});
            out.push_back({face, {m30, ctr, m23, c[3]}, 4});
        } else {
            const Vec2 m01 = lerp(c[0], c[1], 0.5), m12 = lerp(c[1], c[2], 0.5), m20 = lerp(c[2], c[0], 0.5);
            out.push_back({face, {c[0], m01, m20, {}}, 3});
            out.push_back({face, {m01, c[1], m12, {}}, 3});
            out.push_back({face, {m20, m12, c[2], {}}, 3});
            out.push_back({face, {m01, m12, m20, {}}, 3});
        }
    }
};

// 0 outside, 1 inside, 2 undecided. Inside uses convexity of d on a face,
// outside uses the 1-Lipschitz bound from the centre.
int classify(const DistanceField& field, const Cell& cell, double r) {
    bool all_in = true;
    for (int i = 0; i < cell.n && all_in; ++i) all_in = field.at(cell.face, cell.c[i]) <= r;
    if (all_in) return 1;
    const Vec2 ctr = cell.center();
    double rad = 0.0;
    for (int i = 0; i < cell.n; ++i) rad = std::max(rad, dist(ctr, cell.c[i]));
    if (field.at(cell.face, ctr) - rad > r) return 0;
    return 2;
}

AreaEstimate run(const DistanceField& field, const SupportSet& S, double r, double tol, int max_depth,
                 bool parallel) {
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidInput, "radius must be positive");
    if (r > field.max_radius()) throw Error(ErrorKind::InvalidInput, "radius beyond the distance field's range");
    if (frontier_distance(field) <= r)
        throw Error(ErrorKind::TruncationTooSmall, "ball of radius " + std::to_string(r) + " reaches the frontier");
    if (tol <= 0.0) tol = 1e-2 * r * r;
    const PEComplex& X = field.complex();
    std::vector<Cell> cells;
    for (int f : S.faces) {
        const Face& F = X.face(f);
        Cell c{f, {}, F.size()};
        for (int i = 0; i < F.size(); ++i) c.c[i] = F.corners[i];
        cells.push_back(c);
    }
    AreaEstimate est;
    double inside = 0.0;
    for (int depth = 0;; ++depth) {
        const long n = static_cast<long>(cells.size());
        std::vector<int> kind(n);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
        for (long i = 0; i < n; ++i) kind[i] = classify(field, cells[i], r);
        est.cells += n;
        est.depth = depth;
        double undecided = 0.0;
        std::vector<Cell> next;
        for (long i = 0; i < n; ++i) {
            if (kind[i] == 1) inside += cells[i].area();
            if (kind[i] == 2) undecided += cells[i].area();
        }
        if (undecided <= 2.0 * tol) {
            est.area = inside + 0.5 * undecided;
            est.error = 0.5 * undecided;
            return est;
        }
        if (depth == max_depth)
            throw Error(ErrorKind::SubdivisionLimit, "area tolerance not met at subdivision depth " + std::to_string(depth));
        for (long i = 0; i < n; ++i)
            if (kind[i] == 2) cells[i].split(next);
        cells.swap(next);
    }
}

}  // namespace

double frontier_distance(const DistanceField& field) {
    const PEComplex& X = field.complex();
    double best = kInf;
    for (size_t e = 0; e < X.edges().size(); ++e) {
        const Edge& E = X.edge(e);
        if (!E.frontier) continue;
        best = std::min({best, field.at_vertex(E.ends[0]), field.at_vertex(E.ends[1])});
        if (E.faces.empty()) continue;
        const int f = E.faces.front();
        const Face& F = X.face(f);
        const int j = F.loop_index(static_cast<int>(e));
        auto g = [&](double t) { return field.at(f, F.edge_point(j, t)); };
        // d is convex along the edge; golden-section search for its minimum.
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = 0.0, hi = 1.0;
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double g1 = g(x1), g2 = g(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            if (g1 <= g2) {
                hi = x2;
                x2 = x1;
                g2 = g1;
                x1 = hi - phi * (hi - lo);
                g1 = g(x1);
            } else {
                lo = x1;
                x1 = x2;
                g1 = g2;
                x2 = lo + phi * (hi - lo);
                g2 = g(x2);
            }
        }
        best = std::min({best, g1, g2});
    }
    return best;
}

AreaEstimate ball_area(const DistanceField& field, const SupportSet& S, double r, double tol, int max_depth) {
    return run(field, S, r, tol, max_depth, true);
}

AreaEstimate ball_area_serial(const DistanceField& field, const SupportSet& S, double r, double tol, int max_depth) {
    return run(field, S, r, tol, max_depth, false);
}

}  // namespace cat0
