#include "cat0/chains.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cat0 {

void Chain2::set(int face, long c) {
    if (c == 0)
        coeff.erase(face);
    else
        coeff[face] = c;
}

long Chain2::at(int face) const {
    const auto it = coeff.find(face);
    return it == coeff.end() ? 0 : it->second;
}

Chain2 Chain2::operator+(const Chain2& o) const {
    Chain2 r = *this;
    for (const auto& [f, c] : o.coeff) r.set(f, r.at(f) + c);
    return r;
}

Chain2 Chain2::operator*(long k) const {
    Chain2 r;
    for (const auto& [f, c] : coeff) r.set(f, c * k);
    return r;
}

Chain1 boundary(const PEComplex& X, const Chain2& c) {
    Chain1 out;
    for (const auto& [f, k] : c.coeff) {
        const Face& F = X.face(f);
        for (int i = 0; i < F.size(); ++i) out[F.loop[i]] += F.forward[i] ? k : -k;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Chain1 interior_boundary(const PEComplex& X, const Chain2& c) {
    Chain1 out = boundary(X, c);
    std::erase_if(out, [&](const auto& kv) { return X.edge(kv.first).frontier; });
    return out;
}

bool is_relative_cycle(const PEComplex& X, const Chain2& c) { return interior_boundary(X, c).empty(); }

bool SupportSet::contains(const PEComplex& X, const PointLocation& p) const {
    for (int f : X.faces_at(p))
        if (mask[f]) return true;
    return false;
}

SupportSet support_of_faces(const PEComplex& X, const std::vector<int>& faces) {
    SupportSet S;
    S.mask.assign(X.faces().size(), false);
    std::set<int> edges, verts;
    for (int f : faces) {
        S.mask[f] = true;
        const Face& F = X.face(f);
        edges.insert(F.loop.begin(), F.loop.end());
        verts.insert(F.verts.begin(), F.verts.end());
    }
    for (size_t f = 0; f < S.mask.size(); ++f)
        if (S.mask[f]) S.faces.push_back(static_cast<int>(f));
    S.edges.assign(edges.begin(), edges.end());
    S.vertices.assign(verts.begin(), verts.end());
    return S;
}

SupportSet support(const PEComplex& X, const Chain2& c) {
    const Chain1 bad = interior_boundary(X, c);
    if (!bad.empty())
        throw Error(ErrorKind::NotACycle, "boundary is nonzero on edge " + X.edge(bad.begin()->first).id);
    std::vector<int> faces;
    for (const auto& [f, k] : c.coeff) faces.push_back(f);
    return support_of_faces(X, faces);
}

LinkCycle link_cycle(const PEComplex& X, const Chain2& c, const PointLocation& p) {
    LinkCycle lc;
    lc.link = link_at(X, p);
    EdgeMask mask(lc.link.graph.edge_count(), false);
    for (int k = 0; k < lc.link.graph.edge_count(); ++k) {
        lc.coeff.push_back(c.at(lc.link.info[k].face));
        mask[k] = lc.coeff.back() != 0;
        lc.in_support = lc.in_support || mask[k];
    }
    if (lc.in_support) {
        const GirthResult g = girth(lc.link.graph, mask);
        lc.shortest_cycle = g.length;
        lc.shortest_cycle_edges = g.cycle;
    }
    return lc;
}

std::vector<PointLocation> sample_points(const PEComplex& X, const std::vector<int>& faces, int count,
                                         std::uint64_t seed) {
    std::vector<PointLocation> out;
    if (faces.empty() || count <= 0) return out;
    std::mt19937_64 rng(seed);
    std::vector<double> areas;
    for (int f : faces) areas.push_back(X.face(f).area);
    std::discrete_distribution<size_t> pick(areas.begin(), areas.end());
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        const int f = faces[pick(rng)];
        const Face& F = X.face(f);
        double a = unit01(rng), b = unit01(rng);
        Vec2 pos;
        if (F.is_square()) {
            pos = {a, b};
        } else {
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            pos = F.corners[0] + (F.corners[1] - F.corners[0]) * a + (F.corners[2] - F.corners[0]) * b;
        }
        out.push_back(X.locate(f, pos));
    }
    return out;
}

double ExtensionReport::success_rate() const {
    const int judged = attempted - censored;
    return judged > 0 ? static_cast<double>(succeeded) / judged : 1.0;
}

ExtensionReport verify_extension_property(const PEComplex& X, const SupportSet& S, const SamplePlan& plan, double R) {
    std::vector<std::pair<PointLocation, PointLocation>> pairs = plan.pairs;
    if (pairs.empty()) {
        const auto pts = sample_points(X, S.faces, 2 * plan.count, plan.seed);
        for (size_t i = 0; i + 1 < pts.size(); i += 2) pairs.emplace_back(pts[i], pts[i + 1]);
    }
    const int n = static_cast<int>(pairs.size());
    std::vector<int> outcome(n, 0);  // 0 success, 1 censored, 2 failure
    std::vector<std::string> message(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const auto& [p, x] = pairs[i];
        try {
            const GeodesicPath seg = geodesic(X, p, x);
            if (seg.segments.empty()) {
                outcome[i] = 1;
                continue;
            }
            const GeodesicPath ext = extend_in_subcomplex(X, S.mask, seg, R);
            if (!is_local_geodesic(X, ext).is_local_geodesic) {
                outcome[i] = 2;
                message[i] = "extension is not a local geodesic";
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TruncationExit) {
                outcome[i] = 1;
            } else {
                outcome[i] = 2;
                message[i] = e.what();
            }
        }
    }
    ExtensionReport rep;
    rep.attempted = n;
    for (int i = 0; i < n; ++i) {
        if (outcome[i] == 0) ++rep.succeeded;
        if (outcome[i] == 1) ++rep.censored;
        if (outcome[i] == 2) rep.failures.push_back({pairs[i].first, pairs[i].second, message[i]});
    }
    return rep;
}

}  // namespace cat0
