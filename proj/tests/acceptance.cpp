// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cat0/fixtures.hpp"
#include "cat0/geodesics.hpp"
#include "cat0/reports.hpp"
#include "oracles.hpp"

using namespace cat0;

namespace {

// Pinned tolerances.
constexpr double kExact = 1e-15;           // witness length of the three-squares link
constexpr double kGapMax = 0.02;           // relative gap to the refined-graph bound
constexpr double kGapMin = -1e-12;         // "never exceeding" the bound, up to rounding
constexpr double kMarginMin = -1e-9;       // local-geodesic margin
constexpr double kEuclidTol = 1e-9;        // plane geodesic vs Euclidean distance
constexpr double kDensityRel = 0.01;       // closed-form density ratios
constexpr double kBranchTol = 1e-9;        // branch certificate vs tripod model
constexpr double kMeshStep = 1e-3;         // modulus oracle mesh
constexpr double kDecomposeSeconds = 300;  // decomposition runtime at n = 20

struct Run {
    bool verbose;
    std::vector<std::string> dumps;  // report bytes, for the determinism check
    std::ostringstream detail;

    Json keep(const std::string& command, const Report& r) {
        const Json j = envelope(command, RunConfig{}, r);
        dumps.push_back(j.dump());
        return j["result"];
    }
    Json keep(const std::string& command, const RunConfig& cfg, const Report& r) {
        const Json j = envelope(command, cfg, r);
        dumps.push_back(j.dump());
        return j["result"];
    }
    bool check(bool ok, const std::string& what) {
        if (!ok) detail << " [" << what << "]";
        return ok;
    }
};

double as_real(const Json& j) {
    if (j.is_string()) return j.get<std::string>() == "inf" ? kInf : std::nan("");
    return j.get<double>();
}

bool c1_validation(Run& run) {
    bool ok = true;
    const Json grid = run.keep("validate", validate_report(plane_fixture(10).X));
    ok &= run.check(grid["verdict"] == "cat0", "grid verdict");
    const Json three = run.keep("validate", validate_report(square_cone_fixture(3, 3).X));
    ok &= run.check(three["verdict"] == "not_locally_cat0", "three squares verdict");
    const double w = three.value("witness_length", 0.0);
    ok &= run.check(std::abs(w - 3 * kPi / 2) <= kExact, "witness length");
    const Json two = run.keep("validate", validate_report(two_planes_glued_fixture(10).X));
    ok &= run.check(two["verdict"] == "cat0", "two planes verdict");
    run.detail << " witness=" << w;
    return ok;
}

bool c2_geodesics(Run& run) {
    const Fixture F = plane_fixture(10);
    RunConfig cfg;
    cfg.samples = 200;
    const Json r = run.keep("geodesic", cfg, geodesic_batch_report(F.X, cfg));
    const Json& s = r["summary"];
    bool ok = run.check(s["ok"] == 200, "all pairs solved");
    const double max_gap = s["max_relative_gap"].get<double>(), min_gap = as_real(s["min_relative_gap"]);
    const double margin = as_real(s["worst_margin"]);
    ok &= run.check(max_gap <= kGapMax, "gap above 2%");
    ok &= run.check(min_gap >= kGapMin, "length exceeds bound");
    ok &= run.check(margin >= kMarginMin, "margin");
    // Independent oracle: Euclidean distance in the model plane.
    double euclid = 0.0;
    for (const auto& row : r["pairs"]) {
        const Vec2 a = F.model_of(parse_location(F.X, row["from"].get<std::string>()));
        const Vec2 b = F.model_of(parse_location(F.X, row["to"].get<std::string>()));
        euclid = std::max(euclid, std::abs(row["length"].get<double>() - dist(a, b)));
    }
    ok &= run.check(euclid <= kEuclidTol, "euclid");
    run.detail << " max_gap=" << max_gap << " min_gap=" << min_gap << " worst_margin=" << margin
               << " euclid_err=" << euclid;
    return ok;
}

bool c3_extension(Run& run) {
    bool ok = true;
    const std::vector<std::pair<const char*, Fixture>> cases{{"plane", plane_fixture(12)},
                                                             {"tripod", tripod_times_r_fixture(12)},
                                                             {"glasses", glasses_fixture(8, 6)},
                                                             {"bent_flat", bent_flat_fixture(12)}};
    for (const auto& [name, F] : cases) {
        RunConfig cfg;
        const Json r = run.keep("extend", cfg, extend_batch_report(F.X, F.chain, 3.0, cfg));
        const int attempted = r["attempted"], succeeded = r["succeeded"], censored = r["censored"];
        ok &= run.check(attempted == 100 && succeeded + censored == 100 && r["failures"].empty(), name);
        run.detail << " " << name << "=" << succeeded << "+" << censored << "c";
    }
    // Negative control: the upper half of a plane, geodesic ending on its boundary line.
    const Fixture F = plane_fixture(10);
    std::vector<int> upper;
    for (size_t f = 0; f < F.X.faces().size(); ++f)
        if (F.model_of(static_cast<int>(f), F.X.face(f).centroid()).y > 0) upper.push_back(static_cast<int>(f));
    const SupportSet H = support_of_faces(F.X, upper);
    bool no_antipode = false;
    try {
        const GeodesicPath seg = geodesic(F.X, F.model_point(0, {0.3, 1.5}), F.model_point(0, {0.8, 0.0}));
        extend_in_subcomplex(F.X, H.mask, seg, 3.0);
    } catch (const Error& e) {
        no_antipode = e.kind() == ErrorKind::NoAntipode;
    }
    ok &= run.check(no_antipode, "half-plane control");
    return ok;
}

bool c4_density(Run& run) {
    struct Item {
        const char* name;
        Fixture F;
        std::function<PointLocation(const Fixture&)> center;
        double expect;  // closed form, or 0 when only monotonicity and the lower bound apply
    };
    std::vector<Item> items;
    items.push_back({"plane", plane_fixture(20), [](const Fixture& F) { return F.model_point(0, {0.3, 0.4}); }, kPi});
    items.push_back({"tripod_line", tripod_times_r_fixture(20),
                     [](const Fixture& F) { return PointLocation::at_vertex(F.special_vertices[10]); }, 1.5 * kPi});
    items.push_back({"cone_0.1", cone_points_fixture({0.1}, 20),
                     [](const Fixture& F) { return PointLocation::at_vertex(F.special_vertices[0]); }, kPi + 0.05});
    items.push_back({"glasses", glasses_fixture(8, 12), [](const Fixture& F) { return F.model_point(0, {0.5, 0.0}); }, 0});
    items.push_back({"bent_flat", bent_flat_fixture(20), [](const Fixture& F) { return F.model_point(0, {0.3, 0.0}); }, 0});
    items.push_back({"two_planes", two_planes_glued_fixture(20),
                     [](const Fixture& F) { return F.model_point(0, {0.3, 0.4}); }, kPi});
    bool ok = true;
    const RunConfig cfg;
    for (const auto& it : items) {
        const Json r = run.keep("density", cfg, density_report(it.F.X, it.F.chain, it.center(it.F), {1, 2, 4, 8}, cfg));
        const auto ratio = r["ratio"].get<std::vector<double>>();
        const auto err = r["ratio_error"].get<std::vector<double>>();
        bool mono = true, lower = true, closed = true;
        for (size_t i = 0; i < ratio.size(); ++i) {
            if (i > 0 && ratio[i] + err[i] < ratio[i - 1] - err[i - 1]) mono = false;
            if (ratio[i] + err[i] < kPi) lower = false;
            if (it.expect > 0 && std::abs(ratio[i] - it.expect) > kDensityRel * it.expect) closed = false;
        }
        ok &= run.check(mono, std::string(it.name) + " monotone");
        ok &= run.check(lower, std::string(it.name) + " lower bound");
        ok &= run.check(closed, std::string(it.name) + " closed form");
        run.detail << " " << it.name << "=" << ratio.back();
    }
    return ok;
}

bool c5_fibers(Run& run) {
    bool ok = true;
    const Fixture P = plane_fixture(20);
    for (double r : {1.0, 2.5, 4.0}) {
        const Json f = run.keep("fibers", fibers_report(P.X, P.chain, P.model_point(0, {0.3, 0.4}), r));
        ok &= run.check(f["valence_histogram"].size() == 1 && f["valence_histogram"].contains("2") &&
                            f["components"] == 1,
                        "plane circle r=" + std::to_string(r));
    }
    const Fixture T = tripod_times_r_fixture(20);
    for (double r : {1.0, 2.5, 4.0}) {
        const Json f = run.keep("fibers", fibers_report(T.X, T.chain, PointLocation::at_vertex(T.special_vertices[10]), r));
        const Json& h = f["valence_histogram"];
        ok &= run.check(h.size() == 1 && h.value("3", 0) == 2 && f["edges"].size() == 3 && f["components"] == 1,
                        "tripod theta r=" + std::to_string(r));
        run.detail << " tripod r=" << r << " " << h.dump();
    }
    return ok;
}

bool c6_branch(Run& run) {
    bool ok = true;
    const Fixture T = tripod_times_r_fixture(20);
    const Json b = run.keep("branch", branch_report(T.X, T.chain, T.model_point(0, {0.3, 2.5}), 0.5, 2.0));
    ok &= run.check(b["found"].get<bool>(), "tripod found");
    if (b["found"].get<bool>()) {
        const Json& c = b["certificate"];
        ok &= run.check(c["R"] == 2.0 && c["verified"].get<bool>(), "tripod certificate");
        ok &= run.check(c["max_error"].get<double>() <= kBranchTol, "tripod error");
        run.detail << " max_error=" << c["max_error"].get<double>() << " samples=" << c["samples"];
    }
    for (const char* name : {"plane", "bent_flat"}) {
        const Fixture F = make_fixture(name, 20);
        const Json r = run.keep("branch", branch_report(F.X, F.chain, F.model_point(0, {0.3, 2.5}), 0.5, 2.0));
        ok &= run.check(!r["found"].get<bool>(), std::string(name) + " none");
    }
    return ok;
}

bool c7_modulus(Run& run) {
    using namespace cat0::testing_oracles;
    bool ok = true;
    const std::vector<MetricGraph> family{cycle_graph(4, kPi / 2), k23(kPi / 2), suspension_of_three()};
    const Json r = run.keep("suspension-modulus", suspension_modulus_report(family, kPi / 4));
    double oracle = kInf;
    for (const auto& g : family) oracle = std::min(oracle, MeshOracle(g, kMeshStep).beta(kPi / 4));
    const double beta = as_real(r["beta"]);
    ok &= run.check(std::abs(beta - oracle) <= kMeshStep, "mesh oracle");
    run.detail << " beta=" << beta << " oracle=" << oracle;

    const Json circle = run.keep("suspension-modulus", suspension_modulus_report({cycle_graph(4, kPi / 2)}, kPi / 4));
    ok &= run.check(circle["beta"] == "inf" && circle["witness"].is_null(), "circle infinite");

    const Json longer = run.keep("suspension-modulus",
                                 suspension_modulus_report({cycle_graph(3, (kTwoPi + 0.5) / 3)}, kPi / 4));
    ok &= run.check(longer["beta"].is_number() && !longer["witness"].is_null(), "long circle finite");
    run.detail << " long_circle_beta=" << longer["beta"].dump();
    return ok;
}

bool c8_decompose(Run& run) {
    bool ok = true;
    const auto t0 = std::chrono::steady_clock::now();
    const Vec2 p{0.3, 0.4};
    const double r2 = 3.0;

    const Fixture P = plane_fixture(20);
    const SupportSet SP = support(P.X, P.chain);
    const Decomposition DP = decompose(P.X, SP, P.model_point(0, p), r2);
    const Json rp = run.keep("decompose", decomposition_report(P.X, DP));
    ok &= run.check(rp["covering_certified"].get<bool>(), "plane certificate");
    // Independent oracle: distances in the model plane.
    const double bound = r2 + 1.0 / std::cos(kPi / 8) + 1.0;
    double core_far = 0.0, boundary_far = 0.0;
    for (int f : DP.core)
        for (const Vec2& c : P.X.face(f).corners) core_far = std::max(core_far, dist(P.model_of(f, c), p));
    // Each H_i has a boundary square meeting B(p, 1+r2); its boundary line
    // runs on to the frontier, so not every boundary square can.
    for (const auto& h : DP.halfplanes) {
        double near = kInf;
        for (int f : h.H.boundary_squares)
            for (const Vec2& c : P.X.face(f).corners) near = std::min(near, dist(P.model_of(f, c), p));
        boundary_far = std::max(boundary_far, near);
    }
    // Distinct boundary lines share at most the corner square where they cross.
    bool distinct = true;
    for (size_t i = 0; i < DP.halfplanes.size(); ++i)
        for (size_t j = i + 1; j < DP.halfplanes.size(); ++j) {
            int shared = 0;
            for (int f : DP.halfplanes[i].H.boundary_squares)
                for (int g : DP.halfplanes[j].H.boundary_squares) shared += f == g;
            distinct &= shared <= 1;
        }
    ok &= run.check(distinct, "distinct boundary squares");
    ok &= run.check(!DP.halfplanes.empty() && DP.core.size() < SP.faces.size(), "W finite");
    ok &= run.check(core_far <= bound + kTolGeom, "W inside bound");
    ok &= run.check(boundary_far <= 1.0 + r2 + kTolGeom, "boundary square in B(p, 1+r2)");
    run.detail << " plane H=" << DP.halfplanes.size() << " W=" << DP.core.size() << " W_far=" << core_far
               << " boundary_far=" << boundary_far;

    const Fixture B = bent_flat_fixture(20);
    const Decomposition DB = decompose(B.X, support(B.X, B.chain), B.model_point(0, p), r2);
    const Json rb = run.keep("decompose", decomposition_report(B.X, DB));
    ok &= run.check(rb["covering_certified"].get<bool>() && DB.halfplanes.size() >= 2, "bent_flat certificate");
    run.detail << " bent_flat H=" << DB.halfplanes.size();

    const Fixture T = tripod_times_r_fixture(20);
    const Decomposition DT =
        decompose(T.X, support(T.X, T.chain), PointLocation::at_vertex(T.special_vertices[10]), r2);
    const Report rt = decomposition_report(T.X, DT);
    run.keep("decompose", rt);
    ok &= run.check(rt.violation && !DT.covering_certified, "tripod failure");

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= run.check(secs <= kDecomposeSeconds, "runtime");
    if (run.verbose) run.detail << " seconds=" << secs;
    return ok;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(Run&);
};

const std::vector<Criterion> kCriteria{
    {1, "CAT(0) validation", c1_validation},
    {2, "geodesic oracle equivalence", c2_geodesics},
    {3, "geodesic extension", c3_extension},
    {4, "density monotonicity and lower bound", c4_density},
    {5, "fiber structure", c5_fibers},
    {6, "branch detection", c6_branch},
    {7, "isolated-suspension modulus", c7_modulus},
    {8, "half-plane decomposition", c8_decompose},
};

bool run_one(const Criterion& c, Run& run) {
    try {
        return c.fn(run);
    } catch (const std::exception& e) {
        run.detail << " [exception: " << e.what() << "]";
        return false;
    }
}

}  // namespace

int main() {
    int failed = 0;
    std::vector<std::string> first;
    for (const auto& c : kCriteria) {
        Run run{true, {}, {}};
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok = run_one(c, run);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
                    run.detail.str().c_str());
        std::fflush(stdout);
        failed += !ok;
        first.insert(first.end(), run.dumps.begin(), run.dumps.end());
    }

    // Criterion 9: a second pass must reproduce every report byte for byte.
    std::vector<std::string> second;
    for (const auto& c : kCriteria) {
        Run run{false, {}, {}};
        run_one(c, run);
        second.insert(second.end(), run.dumps.begin(), run.dumps.end());
    }
    size_t differing = first.size() == second.size() ? 0 : std::max(first.size(), second.size());
    for (size_t i = 0; i < std::min(first.size(), second.size()); ++i) differing += first[i] != second[i];
    const bool det = differing == 0 && !first.empty();
    std::printf("[%s] criterion 9: determinism (%zu reports, %zu differing)\n", det ? "PASS" : "FAIL", first.size(),
                differing);
    failed += !det;
    return failed == 0 ? 0 : 1;
}
