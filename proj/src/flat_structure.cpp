#include "cat0/flat_structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace cat0 {

const char* to_string(PointClass::Kind k) {
    switch (k) {
        case PointClass::Kind::Flat: return "flat";
        case PointClass::Kind::SingularLine: return "singular_line";
        case PointClass::Kind::VertexLike: return "vertex_like";
        case PointClass::Kind::FrontierCensored: return "frontier_censored";
    }
    return "?";
}

const char* to_string(FlatnessVerdict::Kind k) {
    switch (k) {
        case FlatnessVerdict::Kind::Flat: return "flat";
        case FlatnessVerdict::Kind::NonFlat: return "non_flat";
        case FlatnessVerdict::Kind::Inconclusive: return "inconclusive";
    }
    return "?";
}

DensityProfile density_profile(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                               const std::vector<double>& radii, double tol_rel) {
    if (radii.empty()) throw Error(ErrorKind::InvalidInput, "no radii given");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw Error(ErrorKind::InvalidInput, "radii must be increasing");
    DensityProfile prof;
    prof.center = X.canonical(p);
    prof.center_in_support = S.contains(X, prof.center);
    prof.radii = radii;
    const DistanceField field(X, p, radii.back() + 1.0);
    for (double r : radii) {
        const AreaEstimate a = ball_area(field, S, r, tol_rel * r * r);
        prof.area.push_back(a.area);
        prof.area_error.push_back(a.error);
        prof.ratio.push_back(a.area / (r * r));
        prof.ratio_error.push_back(a.error / (r * r));
    }
    const size_t n = radii.size();
    for (size_t i = 0; i < n; ++i) {
        if (i + 1 < n && prof.ratio[i] - prof.ratio_error[i] > prof.ratio[i + 1] + prof.ratio_error[i + 1] + 1e-12)
            prof.monotone = false;
        if (prof.ratio[i] + prof.ratio_error[i] < kPi - 1e-12) prof.lower_bound_ok = false;
        if (std::abs(prof.ratio[i] - kPi) > prof.ratio_error[i] + 1e-12) prof.equality = false;
    }
    prof.limit = prof.ratio.back();
    prof.limit_increasing = prof.ratio.back() - prof.ratio_error.back() > prof.ratio.front() + prof.ratio_error.front();
    return prof;
}

PointClass classify_point(const PEComplex& X, const SupportSet& S, const PointLocation& x) {
    PointClass pc;
    if (X.on_frontier(x)) {
        pc.kind = PointClass::Kind::FrontierCensored;
        return pc;
    }
    const LinkGraph L = link_at(X, x);
    const EdgeMask mask = L.restricted_to(S.mask);
    std::vector<int> keep(L.graph.labels.size(), -1);
    for (int k = 0; k < L.graph.edge_count(); ++k) {
        if (!mask[k]) continue;
        const auto& e = L.graph.edges[k];
        for (int v : {e.a, e.b})
            if (keep[v] < 0) keep[v] = pc.link.add_vertex(L.graph.labels[v]);
        pc.link.add_edge(keep[e.a], keep[e.b], e.length);
        pc.link_length += e.length;
    }
    const auto susp = suspension_structure(L.graph, mask);
    if (susp && susp->valence() == 2) {
        pc.kind = PointClass::Kind::Flat;
        pc.valence = 2;
    } else if (susp) {
        pc.kind = PointClass::Kind::SingularLine;
        pc.valence = susp->valence();
    } else {
        pc.kind = PointClass::Kind::VertexLike;
    }
    return pc;
}

double tripod_model_distance(int k1, double t1, double h1, int k2, double t2, double h2) {
    const double dt = t1 - t2;
    const double dh = k1 == k2 ? h1 - h2 : h1 + h2;
    return std::sqrt(dt * dt + dh * dh);
}

namespace {

double distance_to_subgraph(const MetricGraph& g, GraphPoint w, const EdgeMask& mask) {
    if (!w.is_vertex() && mask[w.edge]) return 0.0;
    const auto from = distances_from(g, w);
    double best = kInf;
    for (int e = 0; e < g.edge_count(); ++e)
        if (mask[e]) best = std::min({best, from[g.edges[e].a], from[g.edges[e].b]});
    return best;
}

}  // namespace

double conicality(const PEComplex& X, const SupportSet& S, const PointLocation& p, const PointLocation& x) {
    const PointClass pc = classify_point(X, S, x);
    if (pc.kind != PointClass::Kind::Flat && pc.kind != PointClass::Kind::SingularLine)
        throw Error(ErrorKind::PreconditionViolated, "conicality needs a flat or singular-line point");
    const GeodesicPath path = geodesic(X, x, p);
    if (path.segments.empty()) return 0.0;
    const LinkGraph L = link_at(X, x);
    const PathSegment& first = path.segments.front();
    const GraphPoint w = link_point_of(L, first.face, unit(heading(first.to - first.from)));
    const EdgeMask mask = L.restricted_to(S.mask);
    if (pc.kind == PointClass::Kind::Flat) return distance_to_subgraph(L.graph, w, mask);
    const auto susp = suspension_structure(L.graph, mask);
    return std::min(distance(L.graph, w, susp->pole_a), distance(L.graph, w, susp->pole_b));
}

namespace {

int lattice_size(const PEComplex& X, const std::vector<int>& faces, int per_unit) {
    double longest = 0.0;
    for (int f : faces)
        for (int e : X.face(f).loop) longest = std::max(longest, X.edge(e).length);
    return std::max(1, static_cast<int>(std::ceil(per_unit * longest - 1e-9)));
}

// Lattice point (a, b) of face F: unit square grid or triangular lattice.
Vec2 lattice_point(const Face& F, int N, int a, int b) {
    if (F.is_square()) return {static_cast<double>(a) / N, static_cast<double>(b) / N};
    return F.corners[0] + (F.corners[1] - F.corners[0]) * (static_cast<double>(a) / N) +
           (F.corners[2] - F.corners[0]) * (static_cast<double>(b) / N);
}

bool lattice_valid(const Face& F, int N, int a, int b) { return F.is_square() || a + b <= N; }

// Global key of a lattice point so that points on shared edges and vertices
// coincide across faces.
struct LatticeKeys {
    const PEComplex& X;
    int N;
    unsigned long long nv, ne;

    LatticeKeys(const PEComplex& X_, int N_) : X(X_), N(N_), nv(X_.vertices().size()), ne(X_.edges().size()) {}

    // Returns (loop index, position i along the loop edge) or (-1, -1) for interior points.
    std::pair<int, int> on_side(const Face& F, int a, int b) const {
        if (F.is_square()) {
            if (b == 0) return {0, a};
            if (a == N) return {1, b};
            if (b == N) return {2, N - a};
            if (a == 0) return {3, N - b};
        } else {
            if (b == 0) return {0, a};
            if (a + b == N) return {1, b};
            if (a == 0) return {2, N - b};
        }
        return {-1, -1};
    }

    unsigned long long key(int f, int a, int b) const {
        const Face& F = X.face(f);
        const auto [j, i] = on_side(F, a, b);
        if (j >= 0) {
            if (i == 0) return F.verts[j];
            if (i == N) return F.verts[(j + 1) % F.size()];
            const int k = F.forward[j] ? i : N - i;
            return nv + static_cast<unsigned long long>(F.loop[j]) * N + k;
        }
        return nv + ne * N + (static_cast<unsigned long long>(f) * (N + 1) + a) * (N + 1) + b;
    }

    PointLocation location(int f, int a, int b) const {
        const Face& F = X.face(f);
        const auto [j, i] = on_side(F, a, b);
        if (j >= 0) {
            if (i == 0) return PointLocation::at_vertex(F.verts[j]);
            if (i == N) return PointLocation::at_vertex(F.verts[(j + 1) % F.size()]);
            const int k = F.forward[j] ? i : N - i;
            return PointLocation::on_edge(F.loop[j], static_cast<double>(k) / N);
        }
        return PointLocation::in_face(f, lattice_point(F, N, a, b));
    }
};

struct LocalArc {
    std::pair<unsigned long long, unsigned long long> n1, n2;
    Vec2 p1, p2;
    int face;
};

}  // namespace

FiberReport fiber_graph(const DistanceField& field, const SupportSet& S, double r, int samples_per_unit) {
    const PEComplex& X = field.complex();
    if (r > field.max_radius()) throw Error(ErrorKind::InvalidInput, "radius beyond the distance field's range");
    if (frontier_distance(field) <= r)
        throw Error(ErrorKind::TruncationTooSmall, "level set at radius " + std::to_string(r) + " touches the frontier");
    const int N = lattice_size(X, S.faces, samples_per_unit);
    const LatticeKeys keys(X, N);
    const int nf = static_cast<int>(S.faces.size());
    std::vector<std::vector<LocalArc>> arcs(nf);
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < nf; ++idx) {
        const int f = S.faces[idx];
        const Face& F = X.face(f);
        std::vector<double> val((N + 1) * (N + 1), kInf);
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) {
                if (!lattice_valid(F, N, a, b)) continue;
                const PointLocation loc = keys.location(f, a, b);
                val[a * (N + 1) + b] =
                    loc.kind == PointLocation::Kind::Face ? field.at(f, loc.uv) : field.at(loc);
            }
        auto tri = [&](std::array<std::pair<int, int>, 3> t) {
            std::array<double, 3> d;
            std::array<bool, 3> in;
            for (int i = 0; i < 3; ++i) {
                d[i] = val[t[i].first * (N + 1) + t[i].second];
                in[i] = d[i] < r;
            }
            if (in[0] == in[1] && in[1] == in[2]) return;
            LocalArc arc{{}, {}, {}, {}, f};
            int found = 0;
            for (int i = 0; i < 3; ++i) {
                const int j = (i + 1) % 3;
                if (in[i] == in[j]) continue;
                auto ka = keys.key(f, t[i].first, t[i].second), kb = keys.key(f, t[j].first, t[j].second);
                const double lam = (r - d[i]) / (d[j] - d[i]);
                const Vec2 pos = lerp(lattice_point(F, N, t[i].first, t[i].second),
                                      lattice_point(F, N, t[j].first, t[j].second), lam);
                const auto node = std::minmax(ka, kb);
                if (found++ == 0) {
                    arc.n1 = node;
                    arc.p1 = pos;
                } else {
                    arc.n2 = node;
                    arc.p2 = pos;
                }
            }
            arcs[idx].push_back(arc);
        };
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                if (F.is_square()) {
                    tri({{{a, b}, {a + 1, b}, {a + 1, b + 1}}});
                    tri({{{a, b}, {a + 1, b + 1}, {a, b + 1}}});
                } else if (a + b < N) {
                    tri({{{a, b}, {a + 1, b}, {a, b + 1}}});
                    if (a + b + 1 < N) tri({{{a + 1, b}, {a + 1, b + 1}, {a, b + 1}}});
                }
            }
    }

    // Merge into one graph of crossing nodes.
    std::map<std::pair<unsigned long long, unsigned long long>, int> node_id;
    std::vector<PointLocation> node_loc;
    struct Arc {
        int a, b;
        double len;
    };
    std::vector<Arc> all;
    auto get = [&](const std::pair<unsigned long long, unsigned long long>& k, int f, Vec2 pos) {
        const auto it = node_id.find(k);
        if (it != node_id.end()) return it->second;
        const int id = static_cast<int>(node_loc.size());
        node_id.emplace(k, id);
        node_loc.push_back(X.locate(f, pos));
        return id;
    };
    for (int idx = 0; idx < nf; ++idx)
        for (const auto& arc : arcs[idx]) {
            const int a = get(arc.n1, arc.face, arc.p1), b = get(arc.n2, arc.face, arc.p2);
            all.push_back({a, b, dist(arc.p1, arc.p2)});
        }
    const int nn = static_cast<int>(node_loc.size());
    std::vector<std::vector<int>> inc(nn);
    for (int i = 0; i < static_cast<int>(all.size()); ++i) {
        inc[all[i].a].push_back(i);
        inc[all[i].b].push_back(i);
    }

    FiberReport rep;
    rep.radius = r;
    rep.lattice = N;
    std::vector<int> vid(nn, -1);
    auto add_vertex = [&](int node) {
        vid[node] = rep.graph.add_vertex("n" + std::to_string(rep.graph.labels.size()));
        rep.valences.push_back(static_cast<int>(inc[node].size()));
        rep.locations.push_back(node_loc[node]);
    };
    for (int i = 0; i < nn; ++i)
        if (inc[i].size() != 2) add_vertex(i);
    std::vector<bool> used(all.size(), false);
    auto walk = [&](int start, int arc) {
        double len = 0.0;
        int cur = start;
        for (;;) {
            used[arc] = true;
            len += all[arc].len;
            cur = all[arc].a == cur ? all[arc].b : all[arc].a;
            if (vid[cur] >= 0) break;
            const int nxt = inc[cur][0] == arc ? inc[cur][1] : inc[cur][0];
            arc = nxt;
        }
        rep.graph.add_edge(vid[start], vid[cur], len);
    };
    for (int i = 0; i < nn; ++i)
        if (vid[i] >= 0)
            for (int arc : inc[i])
                if (!used[arc]) walk(i, arc);
    for (int i = 0; i < nn; ++i)
        if (vid[i] < 0 && !used[inc[i][0]]) {
            add_vertex(i);
            walk(i, inc[i][0]);
        }

    std::vector<int> comp(rep.graph.labels.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (const auto& e : rep.graph.edges) comp[find(e.a)] = find(e.b);
    for (int i = 0; i < static_cast<int>(comp.size()); ++i) {
        if (find(i) == i) ++rep.components;
        if (rep.valences[i] >= 3) ++rep.branch_nodes;
        if (rep.valences[i] < 2) rep.all_valence_at_least_two = false;
    }
    return rep;
}

}  // namespace cat0
