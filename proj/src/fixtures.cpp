#include "cat0/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace cat0 {

namespace {

std::string name_of(const char* fmt_prefix, int a, int b) {
    return std::string(fmt_prefix) + std::to_string(a) + "_" + std::to_string(b);
}

class Builder {
public:
    void vertex(const std::string& v) {
        if (vset_.insert(v).second) spec_.vertices.push_back(v);
    }

    std::string edge(const std::string& a, const std::string& b, double len) {
        const auto key = std::minmax(a, b);
        const auto it = edges_.find(key);
        if (it != edges_.end()) {
            if (std::abs(lengths_[it->second] - len) > 1e-9)
                throw Error(ErrorKind::ShapeMismatch, "fixture edge " + a + "-" + b + " has inconsistent lengths");
            return it->second;
        }
        const std::string id = "e" + std::to_string(spec_.edges.size());
        spec_.edges.push_back({id, {a, b}, len});
        edges_[key] = id;
        lengths_[id] = len;
        return id;
    }

    /// Adds a face with loop through `vs` (counterclockwise in the model).
    void face(const std::string& id, const std::vector<std::string>& vs, const std::vector<Vec2>& model, int sheet,
              long coefficient) {
        ComplexSpec::FaceSpec fs;
        fs.id = id;
        std::array<double, 3> sides{};
        for (size_t i = 0; i < vs.size(); ++i) {
            vertex(vs[i]);
            const size_t j = (i + 1) % vs.size();
            const double len = vs.size() == 4 ? 1.0 : dist(model[i], model[j]);
            fs.loop.push_back(edge(vs[i], vs[j], len));
            if (vs.size() == 3) sides[i] = len;
        }
        if (vs.size() == 4)
            fs.shape = SquareShape{};
        else
            fs.shape = TriangleShape{sides};
        spec_.faces.push_back(fs);
        model_.push_back(model);
        sheet_.push_back(sheet);
        coeff_[id] = coefficient;
    }

    Fixture finish(const std::string& name) {
        std::map<std::string, int> uses;
        for (const auto& f : spec_.faces)
            for (const auto& e : f.loop) ++uses[e];
        std::set<std::string> fverts;
        for (const auto& e : spec_.edges) {
            if (uses[e.id] == 1) {
                spec_.frontier_edges.push_back(e.id);
                fverts.insert(e.ends[0]);
                fverts.insert(e.ends[1]);
            }
        }
        spec_.frontier_vertices.assign(fverts.begin(), fverts.end());
        Fixture fx;
        fx.name = name;
        fx.X = PEComplex::build(spec_);
        fx.sheet.assign(fx.X.faces().size(), -1);
        fx.to_model.resize(fx.X.faces().size());
        for (size_t k = 0; k < spec_.faces.size(); ++k) {
            const int f = *fx.X.face_index(spec_.faces[k].id);
            const Face& F = fx.X.face(f);
            const auto& M = model_[k];
            const double rot = heading(M[1] - M[0]) - heading(F.corners[1] - F.corners[0]);
            Rigid2 T;
            T.m = {std::cos(rot), -std::sin(rot), std::sin(rot), std::cos(rot)};
            T.t = M[0] - T.apply_dir(F.corners[0]);
            for (int i = 0; i < F.size(); ++i)
                if (dist(T.apply(F.corners[i]), M[i]) > 1e-9)
                    throw Error(ErrorKind::ShapeMismatch, "fixture face " + F.id + " does not match its model");
            fx.to_model[f] = T;
            fx.sheet[f] = sheet_[k];
            fx.chain.set(f, coeff_[spec_.faces[k].id]);
        }
        return fx;
    }

    int special(const Fixture& fx, const std::string& v) const { return *fx.X.vertex_index(v); }

private:
    ComplexSpec spec_;
    std::set<std::string> vset_;
    std::map<std::pair<std::string, std::string>, std::string> edges_;
    std::map<std::string, double> lengths_;
    std::vector<std::vector<Vec2>> model_;
    std::vector<int> sheet_;
    std::map<std::string, long> coeff_;
};

void require_size(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::TruncationTooSmall, what);
}

}  // namespace

Vec2 Fixture::model_of(const PointLocation& p) const {
    for (int f : X.faces_at(p))
        if (sheet[f] >= 0) return model_of(f, X.position_in_face(p, f));
    const int f = X.faces_at(p).front();
    return model_of(f, X.position_in_face(p, f));
}

int Fixture::sheet_of(const PointLocation& p) const {
    int s = -1;
    for (int f : X.faces_at(p)) {
        if (s < 0) s = sheet[f];
        if (sheet[f] != s && sheet[f] >= 0) return -1;
    }
    return s;
}

PointLocation Fixture::model_point(int sheet_id, Vec2 m) const {
    for (size_t f = 0; f < X.faces().size(); ++f) {
        if (sheet[f] != sheet_id) continue;
        const Vec2 uv = to_model[f].inverse().apply(m);
        if (X.face(f).contains(uv, 1e-9)) return X.locate(static_cast<int>(f), uv);
    }
    throw Error(ErrorKind::OutsideFace, "model point outside the fixture");
}

Fixture plane_fixture(int n) {
    require_size(n >= 1, "plane needs n >= 1");
    Builder b;
    const double c = n / 2.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            b.face(name_of("f", i, j),
                   {name_of("v", i, j), name_of("v", i + 1, j), name_of("v", i + 1, j + 1), name_of("v", i, j + 1)},
                   {{i - c, j - c}, {i + 1 - c, j - c}, {i + 1 - c, j + 1 - c}, {i - c, j + 1 - c}}, 0, 1);
        }
    return b.finish("plane");
}

namespace {

// Adds sheet s of a family of grids glued along the row j = jl. Vertices on
// that row are shared between sheets.
void add_sheet(Builder& b, int s, int n, int j0, int j1, int jl, long coefficient_low, long coefficient_high) {
    const double c = n / 2.0;
    auto vname = [&](int i, int j) {
        return j == jl ? name_of("v", i, j) : "s" + std::to_string(s) + "_" + name_of("v", i, j);
    };
    for (int j = j0; j < j1; ++j)
        for (int i = 0; i < n; ++i) {
            const double y = j - jl;
            b.face("s" + std::to_string(s) + "_" + name_of("f", i, j),
                   {vname(i, j), vname(i + 1, j), vname(i + 1, j + 1), vname(i, j + 1)},
                   {{i - c, y}, {i + 1 - c, y}, {i + 1 - c, y + 1}, {i - c, y + 1}}, s,
                   j < jl ? coefficient_low : coefficient_high);
        }
}

std::vector<int> line_vertices(const Fixture& fx, int n, int jl) {
    std::vector<int> out;
    for (int i = 0; i <= n; ++i) out.push_back(*fx.X.vertex_index(name_of("v", i, jl)));
    return out;
}

}  // namespace

std::vector<long> solve_cycle_coefficients(const PEComplex& X, const std::vector<Chain2>& chains, int bound) {
    const int k = static_cast<int>(chains.size());
    std::vector<long> c(k, -bound), best;
    long best_l1 = -1;
    for (;;) {
        const bool nonzero = std::all_of(c.begin(), c.end(), [](long v) { return v != 0; });
        if (nonzero && c[0] > 0) {
            Chain2 sum;
            for (int i = 0; i < k; ++i) sum = sum + chains[i] * c[i];
            if (is_relative_cycle(X, sum)) {
                long l1 = 0;
                for (long v : c) l1 += std::abs(v);
                if (best_l1 < 0 || l1 < best_l1 || (l1 == best_l1 && c < best)) {
                    best_l1 = l1;
                    best = c;
                }
            }
        }
        int i = k - 1;
        while (i >= 0 && c[i] == bound) c[i--] = -bound;
        if (i < 0) break;
        ++c[i];
    }
    return best;
}

Fixture tripod_times_r_fixture(int n) {
    require_size(n >= 2, "tripod_times_r needs n >= 2");
    const int h = std::max(1, n / 2);
    Builder b;
    for (int s = 0; s < 3; ++s) add_sheet(b, s, n, 0, h, 0, 1, 1);
    Fixture fx = b.finish("tripod_times_r");
    std::vector<Chain2> sheets(3);
    for (const auto& [f, c] : fx.chain.coeff) sheets[fx.sheet[f]].set(f, 1);
    const auto coeffs = solve_cycle_coefficients(fx.X, sheets);
    if (coeffs.empty()) throw Error(ErrorKind::NotACycle, "no all-nonzero cycle on the three sheets");
    fx.chain = Chain2{};
    for (int s = 0; s < 3; ++s) fx.chain = fx.chain + sheets[s] * coeffs[s];
    fx.special_vertices = line_vertices(fx, n, 0);
    return fx;
}

Fixture two_planes_glued_fixture(int n) {
    require_size(n >= 2, "two_planes_glued needs n >= 2");
    const int jl = n / 2;
    Builder b;
    add_sheet(b, 0, n, 0, n, jl, 1, 1);
    add_sheet(b, 1, n, 0, n, jl, 0, 0);
    Fixture fx = b.finish("two_planes_glued");
    fx.special_vertices = line_vertices(fx, n, jl);
    return fx;
}

Fixture bent_flat_fixture(int n) {
    require_size(n >= 2, "bent_flat needs n >= 2");
    const int jl = n / 2;
    Builder b;
    add_sheet(b, 0, n, 0, n, jl, 0, 1);
    add_sheet(b, 1, n, 0, n, jl, 1, 0);
    Fixture fx = b.finish("bent_flat");
    fx.special_vertices = line_vertices(fx, n, jl);
    return fx;
}

namespace {

// Triangulated wedge of angle theta between rays l (first) and u, with apex
// `apex` and ray points l(r), u(r) for r = 1..len. Counterclockwise from l to u.
template <class LName, class UName>
void add_wedge(Builder& b, const std::string& prefix, const std::string& apex, LName l, UName u, int len, double theta,
               int sheet, long coefficient) {
    const Vec2 dl = unit(0.0), du = unit(theta);
    b.face(prefix + "_t0", {apex, l(1), u(1)}, {{0, 0}, dl, du}, sheet, coefficient);
    for (int r = 1; r < len; ++r) {
        b.face(prefix + "_t" + std::to_string(r) + "a", {l(r), l(r + 1), u(r + 1)}, {dl * r, dl * (r + 1), du * (r + 1)},
               sheet, coefficient);
        b.face(prefix + "_t" + std::to_string(r) + "b", {l(r), u(r + 1), u(r)}, {dl * r, du * (r + 1), du * r}, sheet,
               coefficient);
    }
}

}  // namespace

Fixture glasses_fixture(int k, int rings) {
    require_size(k >= 3 && rings >= 2, "glasses needs k >= 3 and at least 2 rings");
    Builder b;
    for (int s = 0; s < 2; ++s) {
        const std::string ps = "p" + std::to_string(s);
        auto v = [&](int r, int i) { return r == 0 ? std::string("o") : ps + "_" + name_of("", r, i % k); };
        auto at = [&](int r, int i) { return unit(kTwoPi * i / k) * r; };
        for (int i = 0; i < k; ++i) {
            b.face(ps + "_" + name_of("t", 0, i), {v(0, 0), v(1, i), v(1, i + 1)}, {{0, 0}, at(1, i), at(1, i + 1)}, s,
                   1);
            for (int r = 1; r < rings; ++r) {
                b.face(ps + "_" + name_of("t", r, i) + "a", {v(r, i), v(r + 1, i), v(r + 1, i + 1)},
                       {at(r, i), at(r + 1, i), at(r + 1, i + 1)}, s, 1);
                b.face(ps + "_" + name_of("t", r, i) + "b", {v(r, i), v(r + 1, i + 1), v(r, i + 1)},
                       {at(r, i), at(r + 1, i + 1), at(r, i + 1)}, s, 1);
            }
        }
    }
    add_wedge(
        b, "sector", "o", [](int r) { return "p0_" + name_of("", r, 0); },
        [](int r) { return "p1_" + name_of("", r, 0); }, rings, kPi / 2, 2, 0);
    Fixture fx = b.finish("glasses");
    fx.special_vertices = {*fx.X.vertex_index("o")};
    return fx;
}

Fixture cone_points_fixture(const std::vector<double>& thetas, int n) {
    const int m = static_cast<int>(thetas.size());
    require_size(m >= 1 && n >= 2 * m + 2, "cone_points needs n >= 2m + 2");
    for (double th : thetas)
        if (!(th > 0.0 && th < kPi)) throw Error(ErrorKind::InvalidInput, "cone excess must lie in (0, pi)");
    const int cj = n / 2;
    std::vector<int> cols;
    for (int k = 0; k < m; ++k) cols.push_back(static_cast<int>(std::lround((k + 1.0) * n / (m + 1))));
    auto cut_of = [&](int i) {
        const auto it = std::find(cols.begin(), cols.end(), i);
        return it == cols.end() ? -1 : static_cast<int>(it - cols.begin());
    };
    // Vertex (i, j) as seen from a face on the right (side = +1) or left of column i.
    auto vname = [&](int i, int j, int side) {
        const int k = cut_of(i);
        if (k >= 0 && j > cj && side > 0) return "c" + std::to_string(k) + "_l" + std::to_string(j);
        return name_of("v", i, j);
    };
    Builder b;
    const double c = n / 2.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            b.face(name_of("f", i, j), {vname(i, j, +1), vname(i + 1, j, -1), vname(i + 1, j + 1, -1), vname(i, j + 1, +1)},
                   {{i - c, j - c}, {i + 1 - c, j - c}, {i + 1 - c, j + 1 - c}, {i - c, j + 1 - c}}, 0, 1);
    for (int k = 0; k < m; ++k) {
        const int ci = cols[k];
        add_wedge(
            b, "w" + std::to_string(k), name_of("v", ci, cj),
            [&, ci](int r) { return vname(ci, cj + r, +1); }, [&, ci](int r) { return vname(ci, cj + r, -1); }, n - cj,
            thetas[k], -1, 1);
    }
    Fixture fx = b.finish("cone_points");
    for (int ci : cols) fx.special_vertices.push_back(*fx.X.vertex_index(name_of("v", ci, cj)));
    return fx;
}

Fixture square_cone_fixture(int m, int n) {
    require_size(m >= 1 && n >= 1, "square_cone needs m >= 1 and n >= 1");
    Builder b;
    for (int q = 0; q < m; ++q) {
        auto v = [&](int i, int j) {
            if (i == 0 && j == 0) return std::string("o");
            if (j == 0) return "r" + std::to_string(q) + "_" + std::to_string(i);
            if (i == 0) return "r" + std::to_string((q + 1) % m) + "_" + std::to_string(j);
            return "q" + std::to_string(q) + "_" + name_of("v", i, j);
        };
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                b.face("q" + std::to_string(q) + "_" + name_of("f", i, j), {v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)},
                       {{double(i), double(j)}, {i + 1.0, double(j)}, {i + 1.0, j + 1.0}, {double(i), j + 1.0}}, q, 1);
    }
    Fixture fx = b.finish("square_cone");
    fx.special_vertices = {*fx.X.vertex_index("o")};
    return fx;
}

Fixture triangle_cone_fixture(int m) {
    require_size(m >= 3, "triangle_cone needs m >= 3");
    Builder b;
    for (int i = 0; i < m; ++i)
        b.face("t" + std::to_string(i), {"o", "a" + std::to_string(i), "a" + std::to_string((i + 1) % m)},
               {{0, 0}, unit(kTwoPi * i / m), unit(kTwoPi * (i + 1) / m)}, 0, 1);
    Fixture fx = b.finish("triangle_cone");
    fx.special_vertices = {*fx.X.vertex_index("o")};
    return fx;
}

Fixture make_fixture(const std::string& name, int size, const std::vector<double>& thetas) {
    if (name == "plane") return plane_fixture(size);
    if (name == "tripod_times_r") return tripod_times_r_fixture(size);
    if (name == "two_planes_glued") return two_planes_glued_fixture(size);
    if (name == "bent_flat") return bent_flat_fixture(size);
    if (name == "glasses") return glasses_fixture(size);
    if (name == "cone_points") return cone_points_fixture(thetas, size);
    if (name == "three_squares") return square_cone_fixture(3, size);
    throw Error(ErrorKind::InvalidInput, "unknown fixture " + name);
}

}  // namespace cat0
