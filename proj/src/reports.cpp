#include "cat0/reports.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cat0/geodesics.hpp"
#include "cat0/modulus.hpp"

namespace cat0 {

void RunConfig::check() const {
    if (!(area_tol > 0.0 && area_tol <= 0.5)) throw Error(ErrorKind::InvalidInput, "area tolerance must lie in (0, 0.5]");
    if (!(refine_eps > 0.0 && refine_eps <= 1.0)) throw Error(ErrorKind::InvalidInput, "refinement eps must lie in (0, 1]");
    if (samples < 1) throw Error(ErrorKind::InvalidInput, "sample count must be positive");
}

Json RunConfig::to_json() const {
    return {{"tol_geom", kTolGeom}, {"area_tol_rel", area_tol}, {"refine_eps", refine_eps}, {"seed", seed},
            {"samples", samples}};
}

Json envelope(const std::string& command, const RunConfig& cfg, const Report& r) {
    return {{"command", command},
            {"version", kReportVersion},
            {"tolerances", cfg.to_json()},
            {"property_violation", r.violation},
            {"result", r.body}};
}

namespace {

Json ids_of_faces(const PEComplex& X, const std::vector<int>& faces) {
    Json a = Json::array();
    for (int f : faces) a.push_back(X.face(f).id);
    return a;
}

Json vec_json(Vec2 v) { return Json::array({v.x, v.y}); }

Json path_json(const PEComplex& X, const GeodesicPath& path) {
    Json segs = Json::array();
    for (const auto& s : path.segments)
        segs.push_back({{"face", X.face(s.face).id}, {"from", vec_json(s.from)}, {"to", vec_json(s.to)}});
    Json pts = Json::array();
    for (const auto& p : path.points) pts.push_back(location_string(X, p));
    return {{"length", path.length()}, {"segments", segs}, {"points", pts}, {"reached_frontier", path.reached_frontier}};
}

Json certificate_json(const PEComplex& X, const GeodesicCertificate& c) {
    Json cr = Json::array();
    for (const auto& k : c.crossings)
        cr.push_back({{"at", location_string(X, k.at)}, {"link_distance", k.link_distance}, {"margin", k.margin}});
    return {{"is_local_geodesic", c.is_local_geodesic}, {"worst_margin", json_real(c.worst_margin)}, {"crossings", cr}};
}

Json metric_graph_json(const MetricGraph& g) {
    Json j = graph_to_json(g);
    j["total_length"] = g.total_length();
    return j;
}

}  // namespace

Report validate_report(const PEComplex& X) {
    const Cat0Report r = validate_cat0(X);
    Report out;
    Json& b = out.body;
    b["verdict"] = to_string(r.verdict);
    b["counts"] = {{"vertices", X.vertices().size()}, {"edges", X.edges().size()}, {"faces", X.faces().size()}};
    b["min_girth"] = json_real(r.min_girth);
    b["simple_connectivity"] = r.sc_evidence;
    if (r.offending_vertex) {
        b["offending_vertex"] = X.vertex(*r.offending_vertex).id;
        b["witness_faces"] = ids_of_faces(X, r.witness_faces);
        b["witness_length"] = r.witness_length;
    }
    out.violation = r.verdict == Cat0Report::Verdict::NotLocallyCat0;
    return out;
}

Report link_report(const PEComplex& X, const PointLocation& x) {
    const LinkGraph L = link_at(X, x, true);
    const GirthResult g = girth(L.graph);
    Report out;
    out.body = {{"center", location_string(X, x)},
                {"partial", L.partial},
                {"graph", metric_graph_json(L.graph)},
                {"girth", json_real(g.length)},
                {"girth_cycle", g.cycle}};
    Json faces = Json::array();
    for (const auto& inf : L.info) faces.push_back(X.face(inf.face).id);
    out.body["edge_faces"] = faces;
    out.violation = !L.partial && g.length < kTwoPi - kTolGeom;
    return out;
}

Report suspension_modulus_report(const std::vector<MetricGraph>& family, double alpha) {
    const SuspensionModulus m = isolated_suspension_modulus(family, alpha);
    Report out;
    out.body = {{"alpha", alpha}, {"beta", json_real(m.beta)}, {"supports_examined", m.supports_examined},
                {"graphs", family.size()}};
    if (m.witness) {
        const auto& w = *m.witness;
        const MetricGraph& g = family[w.graph];
        Json ant = Json::array();
        for (const auto& a : w.antipodes) ant.push_back(graph_point_to_json(g, a));
        out.body["witness"] = {{"graph", w.graph},
                               {"support", w.support},
                               {"point", graph_point_to_json(g, w.point)},
                               {"antipodes", ant},
                               {"diameter", w.diameter},
                               {"support_is_suspension", w.support_is_suspension},
                               {"pole_distance", json_real(w.pole_distance)}};
    } else {
        out.body["witness"] = nullptr;
    }
    return out;
}

Report geodesic_report(const PEComplex& X, const PointLocation& p, const PointLocation& q, const RunConfig& cfg) {
    const GeodesicPath path = geodesic(X, p, q);
    const GeodesicCertificate c = is_local_geodesic(X, path);
    const RefinedGraph rg(X, cfg.refine_eps);
    Report out;
    out.body = {{"from", location_string(X, p)},
                {"to", location_string(X, q)},
                {"path", path_json(X, path)},
                {"certificate", certificate_json(X, c)},
                {"refined_upper_bound", json_real(rg.upper_bound(p, q))}};
    out.violation = !c.is_local_geodesic;
    return out;
}

Report geodesic_batch_report(const PEComplex& X, const RunConfig& cfg) {
    std::vector<int> all(X.faces().size());
    for (size_t f = 0; f < all.size(); ++f) all[f] = static_cast<int>(f);
    const auto pts = sample_points(X, all, 2 * cfg.samples, cfg.seed);
    const RefinedGraph rg(X, cfg.refine_eps);
    const int n = cfg.samples;
    std::vector<Json> rows(n);
    std::vector<double> gap(n, 0.0), margin(n, kInf);
    std::vector<int> status(n, 0);  // 0 ok, 1 censored, 2 failed
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const PointLocation& p = pts[2 * i];
        const PointLocation& q = pts[2 * i + 1];
        Json row = {{"from", location_string(X, p)}, {"to", location_string(X, q)}};
        try {
            const GeodesicPath path = geodesic(X, p, q);
            const GeodesicCertificate c = is_local_geodesic(X, path);
            const double ub = rg.upper_bound(p, q);
            const double len = path.length();
            gap[i] = ub > 0.0 ? (ub - len) / ub : 0.0;
            margin[i] = c.worst_margin;
            row["length"] = len;
            row["upper_bound"] = json_real(ub);
            row["worst_margin"] = json_real(c.worst_margin);
            row["local_geodesic"] = c.is_local_geodesic;
            status[i] = c.is_local_geodesic && len <= ub + kTolGeom ? 0 : 2;
        } catch (const Error& e) {
            row["error"] = e.what();
            status[i] = e.kind() == ErrorKind::TruncationExit ? 1 : 2;
        }
        rows[i] = std::move(row);
    }
    Report out;
    double max_gap = 0.0, min_gap = kInf, worst = kInf;
    int ok = 0, censored = 0;
    for (int i = 0; i < n; ++i) {
        if (status[i] == 1) ++censored;
        if (status[i] != 0) continue;
        ++ok;
        max_gap = std::max(max_gap, gap[i]);
        min_gap = std::min(min_gap, gap[i]);
        worst = std::min(worst, margin[i]);
    }
    out.body = {{"pairs", rows},
                {"summary",
                 {{"pairs", n},
                  {"ok", ok},
                  {"censored", censored},
                  {"max_relative_gap", max_gap},
                  {"min_relative_gap", json_real(min_gap)},
                  {"worst_margin", json_real(worst)}}}};
    out.violation = ok + censored != n;
    return out;
}

Report extend_report(const PEComplex& X, const Chain2& c, const PointLocation& p, const PointLocation& x, double R) {
    const SupportSet S = support(X, c);
    if (!S.contains(X, p) || !S.contains(X, x)) throw Error(ErrorKind::InvalidInput, "both points must lie in the support");
    const GeodesicPath seg = geodesic(X, p, x);
    Report out;
    out.body = {{"from", location_string(X, p)}, {"through", location_string(X, x)}, {"radius", R},
                {"segment", path_json(X, seg)}};
    try {
        const GeodesicPath ext = extend_in_subcomplex(X, S.mask, seg, R);
        out.body["extension"] = path_json(X, ext);
        out.body["certificate"] = certificate_json(X, is_local_geodesic(X, ext));
        out.body["status"] = ext.reached_frontier ? "reached_frontier" : "reached_radius";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoAntipode) throw;
        out.body["status"] = "no_antipode";
        out.body["error"] = e.what();
        out.violation = true;
    }
    return out;
}

Report extend_batch_report(const PEComplex& X, const Chain2& c, double R, const RunConfig& cfg) {
    const SupportSet S = support(X, c);
    SamplePlan plan;
    plan.count = cfg.samples;
    plan.seed = cfg.seed;
    const ExtensionReport r = verify_extension_property(X, S, plan, R);
    Json fails = Json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"p", location_string(X, f.p)}, {"x", location_string(X, f.x)}, {"message", f.message}});
    Report out;
    out.body = {{"radius", R},          {"attempted", r.attempted}, {"succeeded", r.succeeded},
                {"censored", r.censored}, {"failures", fails},       {"success_rate", r.success_rate()}};
    out.violation = !r.failures.empty();
    return out;
}

Report support_report(const PEComplex& X, const Chain2& c) {
    Report out;
    Json bd = Json::object();
    for (const auto& [e, k] : interior_boundary(X, c)) bd[X.edge(e).id] = k;
    out.body["interior_boundary"] = bd;
    out.body["relative_cycle"] = bd.empty();
    if (!bd.empty()) {
        out.violation = true;
        return out;
    }
    const SupportSet S = support(X, c);
    Json edges = Json::array(), verts = Json::array();
    for (int e : S.edges) edges.push_back(X.edge(e).id);
    for (int v : S.vertices) verts.push_back(X.vertex(v).id);
    double area = 0.0;
    for (int f : S.faces) area += X.face(f).area;
    out.body["faces"] = ids_of_faces(X, S.faces);
    out.body["edges"] = edges;
    out.body["vertices"] = verts;
    out.body["area"] = area;
    return out;
}

Report density_report(const PEComplex& X, const Chain2& c, const PointLocation& p, const std::vector<double>& radii,
                      const RunConfig& cfg) {
    const SupportSet S = support(X, c);
    const DensityProfile d = density_profile(X, S, p, radii, cfg.area_tol);
    Report out;
    out.body = {{"center", location_string(X, p)},
                {"center_in_support", d.center_in_support},
                {"radii", d.radii},
                {"area", d.area},
                {"area_error", d.area_error},
                {"ratio", d.ratio},
                {"ratio_error", d.ratio_error},
                {"monotone", d.monotone},
                {"lower_bound_ok", d.lower_bound_ok},
                {"equality", d.equality},
                {"limit", d.limit},
                {"limit_increasing", d.limit_increasing},
                {"pi", kPi}};
    out.violation = !d.monotone || (d.center_in_support && !d.lower_bound_ok);
    return out;
}

Report classify_report(const PEComplex& X, const Chain2& c, const PointLocation& x) {
    const SupportSet S = support(X, c);
    const PointClass pc = classify_point(X, S, x);
    Report out;
    out.body = {{"at", location_string(X, x)},
                {"kind", to_string(pc.kind)},
                {"valence", pc.valence},
                {"link_length", pc.link_length},
                {"link", metric_graph_json(pc.link)}};
    return out;
}

Report fibers_report(const PEComplex& X, const Chain2& c, const PointLocation& p, double r) {
    const SupportSet S = support(X, c);
    const DistanceField field(X, p, r + 2.0);
    if (frontier_distance(field) <= r) throw Error(ErrorKind::TruncationTooSmall, "fiber radius reaches the frontier");
    const FiberReport f = fiber_graph(field, S, r);
    Json nodes = Json::array();
    for (int v = 0; v < f.graph.vertex_count(); ++v)
        nodes.push_back({{"valence", f.valences[v]}, {"at", location_string(X, f.locations[v])}});
    Json edges = Json::array();
    for (const auto& e : f.graph.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"len", e.length}});
    std::map<int, int> hist;
    for (int v : f.valences) ++hist[v];
    Json hj = Json::object();
    for (auto [val, n] : hist) hj[std::to_string(val)] = n;
    Report out;
    out.body = {{"center", location_string(X, p)},
                {"radius", r},
                {"nodes", nodes},
                {"edges", edges},
                {"valence_histogram", hj},
                {"components", f.components},
                {"branch_nodes", f.branch_nodes},
                {"all_valence_at_least_two", f.all_valence_at_least_two},
                {"lattice", f.lattice}};
    out.violation = !f.all_valence_at_least_two;
    return out;
}

Report branch_report(const PEComplex& X, const Chain2& c, const PointLocation& p, double r0, double R) {
    const SupportSet S = support(X, c);
    const auto b = detect_branch(X, S, p, r0, R);
    Report out;
    out.body = {{"center", location_string(X, p)}, {"r0", r0}, {"R", R}, {"found", b.has_value()}};
    if (b) {
        out.body["certificate"] = {{"center", location_string(X, b->center)},
                                   {"R", b->R},
                                   {"found_at_radius", b->found_at_radius},
                                   {"line_edge", X.edge(b->line_edge).id},
                                   {"sheets", ids_of_faces(X, b->sheets)},
                                   {"samples", b->samples},
                                   {"max_error", b->max_error},
                                   {"sheets_flat", b->sheets_flat},
                                   {"verified", b->verified}};
        out.violation = !b->verified;
    }
    return out;
}

Report decomposition_report(const PEComplex& X, const Decomposition& D) {
    Json hs = Json::array();
    for (const auto& h : D.halfplanes)
        hs.push_back({{"x", location_string(X, h.x)},
                      {"faces", h.H.faces.size()},
                      {"boundary_squares", ids_of_faces(X, h.H.boundary_squares)},
                      {"strip", h.H.strip},
                      {"boundary_distance", h.boundary_distance},
                      {"near_boundary_ok", h.near_boundary_ok},
                      {"internal_links_flat", h.internal_links_flat},
                      {"boundary_geodesic", h.boundary_geodesic},
                      {"region_certified", h.region_certified}});
    Report out;
    out.body = {{"center", location_string(X, D.center)},
                {"r2", D.r2},
                {"alpha", D.alpha},
                {"precondition_ok", D.precondition_ok},
                {"precondition_note", D.precondition_note},
                {"link_modulus_beta", json_real(D.link_modulus_beta)},
                {"candidates", D.candidates},
                {"halfplanes", hs},
                {"core", ids_of_faces(X, D.core)},
                {"core_outside_bound", ids_of_faces(X, D.core_outside)},
                {"core_radius_bound", D.core_radius_bound},
                {"covering_certified", D.covering_certified}};
    out.violation = !D.covering_certified;
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string density_svg(const Json& b) {
    const auto radii = b.at("radii").get<std::vector<double>>();
    const auto ratio = b.at("ratio").get<std::vector<double>>();
    const auto err = b.at("ratio_error").get<std::vector<double>>();
    const double W = 480, H = 320, m = 40;
    double ylo = kPi, yhi = kPi;
    for (size_t i = 0; i < ratio.size(); ++i) {
        ylo = std::min(ylo, ratio[i] - err[i]);
        yhi = std::max(yhi, ratio[i] + err[i]);
    }
    const double pad = 0.1 * (yhi - ylo) + 0.05;
    ylo -= pad;
    yhi += pad;
    const double xhi = radii.empty() ? 1.0 : radii.back() * 1.05;
    const auto X = [&](double r) { return m + (W - 2 * m) * r / xhi; };
    const auto Y = [&](double v) { return H - m - (H - 2 * m) * (v - ylo) / (yhi - ylo); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << fmt(Y(kPi)) << "\" x2=\"" << W - m << "\" y2=\"" << fmt(Y(kPi))
       << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    os << "<text x=\"" << W - m << "\" y=\"" << fmt(Y(kPi) - 4) << "\" font-size=\"11\" text-anchor=\"end\">pi</text>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" font-size=\"12\" text-anchor=\"middle\">r</text>\n";
    os << "<text x=\"12\" y=\"" << H / 2 << "\" font-size=\"12\">area/r^2</text>\n";
    std::string poly;
    for (size_t i = 0; i < radii.size(); ++i) {
        const double x = X(radii[i]);
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(Y(ratio[i] - err[i])) << "\" x2=\"" << fmt(x) << "\" y2=\""
           << fmt(Y(ratio[i] + err[i])) << "\" stroke=\"steelblue\"/>\n";
        os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(Y(ratio[i])) << "\" r=\"3\" fill=\"steelblue\"/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << H - m + 14 << "\" font-size=\"10\" text-anchor=\"middle\">"
           << fmt(radii[i]) << "</text>\n";
        poly += fmt(x) + "," + fmt(Y(ratio[i])) + " ";
    }
    os << "<polyline points=\"" << poly << "\" fill=\"none\" stroke=\"steelblue\"/>\n</svg>\n";
    return os.str();
}

std::string decomposition_svg(const PEComplex& X, const Decomposition& D) {
    // One panel per half-plane, drawn in its own chart.
    const int n = static_cast<int>(D.halfplanes.size());
    const int cols = std::max(1, std::min(n, 4));
    const int rows = std::max(1, (n + cols - 1) / cols);
    const double P = 220, s = 8;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * P << "\" height=\"" << rows * P + 30
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"8\" y=\"20\" font-size=\"13\">core W: " << D.core.size() << " faces, certified: "
       << (D.covering_certified ? "yes" : "no") << "</text>\n";
    for (int k = 0; k < n; ++k) {
        const auto& h = D.halfplanes[k];
        const double ox = (k % cols) * P + P / 2, oy = 30 + (k / cols) * P + P - 20;
        os << "<g>\n";
        for (size_t i = 0; i < h.chart.size(); ++i) {
            const bool boundary =
                std::binary_search(h.H.boundary_squares.begin(), h.H.boundary_squares.end(), h.H.faces[i]);
            std::string pts;
            for (const Vec2& c : h.chart[i]) pts += fmt(ox + s * c.x) + "," + fmt(oy - s * c.y) + " ";
            os << "<polygon points=\"" << pts << "\" fill=\"" << (boundary ? "#f4a261" : "#cfe3f3")
               << "\" stroke=\"#555\" stroke-width=\"0.3\"/>\n";
        }
        os << "<circle cx=\"" << ox << "\" cy=\"" << oy << "\" r=\"2.5\" fill=\"crimson\"/>\n";
        os << "<text x=\"" << ox - P / 2 + 6 << "\" y=\"" << oy + 14 << "\" font-size=\"10\">H" << k << " at "
           << location_string(X, h.x) << "</text>\n</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cat0
