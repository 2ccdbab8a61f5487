#include <algorithm>
#include <cmath>

#include "cat0/flat_structure.hpp"

namespace cat0 {

namespace {

struct ModelSample {
    int sheet;  // -1 on the line
    double t, h;
    PointLocation at;
};

// Unit vector along edge e (from ends[0] to ends[1]) and inward normal, in face f.
std::pair<Vec2, Vec2> edge_frame(const PEComplex& X, int f, int e) {
    const Face& F = X.face(f);
    const int j = F.loop_index(e);
    const Vec2 d = unit(heading(F.corners[(j + 1) % F.size()] - F.corners[j]));
    const Vec2 inward{-d.y, d.x};
    return {F.forward[j] ? d : -d, inward};
}

std::optional<int> singular_edge_at(const PEComplex& X, const SupportSet& S, const PointLocation& z) {
    auto count = [&](int e) {
        int c = 0;
        for (int f : X.edge(e).faces) c += S.mask[f] ? 1 : 0;
        return c;
    };
    if (z.kind == PointLocation::Kind::Edge) return count(z.id) >= 3 ? std::optional<int>(z.id) : std::nullopt;
    if (z.kind == PointLocation::Kind::Vertex)
        for (int e : X.vertex(z.id).edges)
            if (count(e) >= 3) return e;
    return std::nullopt;
}

}  // namespace

std::optional<BranchCertificate> detect_branch(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                                               double r0, double R, double tol) {
    if (!(R > 0.0) || r0 < 0.0) throw Error(ErrorKind::InvalidInput, "need R > 0 and r0 >= 0");
    const DistanceField field(X, p, r0 + 3.0 * R + 1.0);
    if (frontier_distance(field) <= r0 + 3.0 * R)
        throw Error(ErrorKind::TruncationTooSmall, "truncation does not contain B(p, r0 + 3R)");
    std::optional<PointLocation> z;
    double found = 0.0;
    const int steps = 4;
    for (int s = 0; s <= steps && !z; ++s) {
        const double r = r0 + R + R * s / steps;
        const FiberReport fib = fiber_graph(field, S, r);
        for (size_t i = 0; i < fib.valences.size() && !z; ++i)
            if (fib.valences[i] >= 3 && singular_edge_at(X, S, fib.locations[i])) {
                z = fib.locations[i];
                found = r;
            }
    }
    if (!z) return std::nullopt;

    BranchCertificate cert;
    cert.center = *z;
    cert.R = R;
    cert.found_at_radius = found;
    cert.line_edge = *singular_edge_at(X, S, *z);
    for (int f : X.edge(cert.line_edge).faces)
        if (S.mask[f]) cert.sheets.push_back(f);

    std::vector<ModelSample> samples{{-1, 0.0, 0.0, *z}};
    const std::vector<double> radii{0.25 * R, 0.5 * R, 0.75 * R, 0.98 * R};
    auto shoot_to = [&](int f, double t, double h) {
        const auto [u, n] = edge_frame(X, f, cert.line_edge);
        const double len = std::hypot(t, h);
        const GeodesicPath ray = shoot(X, S.mask, *z, f, u * (t / len) + n * (h / len), len);
        if (ray.reached_frontier) throw Error(ErrorKind::TruncationTooSmall, "tripod ball leaves the truncation");
        return ray.end();
    };
    for (double rho : radii) {
        samples.push_back({-1, rho, 0.0, shoot_to(cert.sheets[0], rho, 0.0)});
        samples.push_back({-1, -rho, 0.0, shoot_to(cert.sheets[0], -rho, 0.0)});
        for (size_t k = 0; k < cert.sheets.size(); ++k)
            for (double phi : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
                const double t = rho * std::cos(phi), h = rho * std::sin(phi);
                samples.push_back({static_cast<int>(k), t, h, shoot_to(cert.sheets[k], t, h)});
            }
    }
    cert.samples = static_cast<int>(samples.size());
    for (const auto& s : samples) {
        const PointClass pc = classify_point(X, S, s.at);
        const bool ok = s.sheet < 0 ? pc.kind == PointClass::Kind::SingularLine &&
                                          pc.valence == static_cast<int>(cert.sheets.size())
                                    : pc.kind == PointClass::Kind::Flat;
        cert.sheets_flat = cert.sheets_flat && ok;
    }
    const int n = cert.samples;
    std::vector<double> worst(n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const DistanceField fi(X, samples[i].at, 2.0 * R + 1.0);
        for (int j = i + 1; j < n; ++j) {
            const auto &a = samples[i], &b = samples[j];
            const int ka = a.sheet < 0 ? 0 : a.sheet, kb = b.sheet < 0 ? 0 : b.sheet;
            const double model = tripod_model_distance(ka, a.t, a.h, kb, b.t, b.h);
            worst[i] = std::max(worst[i], std::abs(fi.at(b.at) - model));
        }
    }
    cert.max_error = *std::max_element(worst.begin(), worst.end());
    cert.verified = cert.max_error <= tol && cert.sheets_flat;
    return cert;
}

int packing_number(const PEComplex& X, const SupportSet& S, const PointLocation& p, double r, double eps,
                   int samples_per_unit) {
    if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1]");
    const DistanceField from_p(X, p, r + 1.0);
    if (frontier_distance(from_p) <= r) throw Error(ErrorKind::TruncationTooSmall, "ball reaches the frontier");
    double longest = 0.0;
    for (int f : S.faces)
        for (int e : X.face(f).loop) longest = std::max(longest, X.edge(e).length);
    const int N = std::max(1, static_cast<int>(std::ceil(samples_per_unit * longest - 1e-9)));
    const double sep = eps * r;
    std::vector<DistanceField> chosen;
    chosen.emplace_back(X, p, sep + 1.0);
    auto offer = [&](int f, Vec2 uv) {
        for (const auto& c : chosen)
            if (c.at(f, uv) < sep - kTolGeom) return;
        chosen.emplace_back(X, X.locate(f, uv), sep + 1.0);
    };
    for (int f : S.faces) {
        const Face& F = X.face(f);
        auto lattice = [&](int a, int b) {
            return F.is_square() ? Vec2{double(a) / N, double(b) / N}
                                 : F.corners[0] + (F.corners[1] - F.corners[0]) * (double(a) / N) +
                                       (F.corners[2] - F.corners[0]) * (double(b) / N);
        };
        auto valid = [&](int a, int b) { return a >= 0 && b >= 0 && a <= N && b <= N && (F.is_square() || a + b <= N); };
        std::vector<Vec2> sphere;
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) {
                if (!valid(a, b)) continue;
                const Vec2 uv = lattice(a, b);
                const double d = from_p.at(f, uv);
                if (d <= r) offer(f, uv);
                // Sphere points on lattice segments leaving the ball, found by bisection.
                for (auto [da, db] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, -1}}) {
                    if (!valid(a + da, b + db)) continue;
                    Vec2 in = uv, out = lattice(a + da, b + db);
                    const double d2 = from_p.at(f, out);
                    if ((d <= r) == (d2 <= r)) continue;
                    if (d > r) std::swap(in, out);
                    for (int it = 0; it < 60; ++it) {
                        const Vec2 mid = lerp(in, out, 0.5);
                        (from_p.at(f, mid) <= r ? in : out) = mid;
                    }
                    sphere.push_back(in);
                }
            }
        for (const Vec2& uv : sphere) offer(f, uv);
    }
    return static_cast<int>(chosen.size());
}

FlatnessVerdict flatness_test(const PEComplex& X, const SupportSet& S, const PointLocation& p,
                              const std::vector<double>& radii, double tol_rel) {
    FlatnessVerdict v;
    v.profile = density_profile(X, S, p, radii, tol_rel);
    for (size_t i = 0; i < radii.size(); ++i)
        if (std::abs(v.profile.ratio[i] - kPi) > v.profile.ratio_error[i] + 1e-12) {
            v.kind = FlatnessVerdict::Kind::NonFlat;
            v.witness_ratio = v.profile.ratio[i];
            return v;
        }
    const DistanceField field(X, p, radii.back() + 1.0);
    std::vector<PointLocation> pts;
    for (int u : S.vertices) pts.push_back(PointLocation::at_vertex(u));
    for (int e : S.edges) pts.push_back(PointLocation::on_edge(e, 0.5));
    for (int f : S.faces) pts.push_back(PointLocation::in_face(f, X.face(f).centroid()));
    for (const auto& x : pts) {
        if (field.at(x) > radii.back()) continue;
        ++v.points_checked;
        if (classify_point(X, S, x).kind != PointClass::Kind::Flat) {
            v.kind = FlatnessVerdict::Kind::NonFlat;
            v.witness_point = x;
            return v;
        }
    }
    v.kind = FlatnessVerdict::Kind::Flat;
    return v;
}

}  // namespace cat0
