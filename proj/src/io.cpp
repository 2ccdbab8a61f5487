#include "cat0/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cat0 {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << dump_json(j);
}

double parse_number(const std::string& s, const std::string& what) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, what + ": not a number: '" + s + "'");
    }
    if (used != s.size()) throw Error(ErrorKind::InvalidInput, what + ": not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_number_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_number(tok, what));
    if (out.empty()) throw Error(ErrorKind::InvalidInput, what + ": empty list");
    return out;
}

double json_number(const Json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>(), what);
    throw Error(ErrorKind::InvalidInput, what + ": expected a number");
}

Json json_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, ctx + ": missing '" + key + "'");
    return j.at(key);
}

std::string string_of(const Json& j, const std::string& ctx) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw Error(ErrorKind::InvalidInput, ctx + ": expected an id");
}

}  // namespace

ComplexSpec complex_spec_from_json(const Json& j) {
    ComplexSpec s;
    try {
        for (const Json& v : field(j, "vertices", "complex"))
            s.vertices.push_back(v.is_object() ? string_of(field(v, "id", "vertex"), "vertex") : string_of(v, "vertex"));
        for (const Json& e : field(j, "edges", "complex")) {
            ComplexSpec::EdgeSpec es;
            es.id = string_of(field(e, "id", "edge"), "edge");
            const Json& ends = field(e, "ends", "edge " + es.id);
            if (!ends.is_array() || ends.size() != 2) throw Error(ErrorKind::InvalidInput, "edge " + es.id + ": ends");
            es.ends = {string_of(ends[0], "edge"), string_of(ends[1], "edge")};
            es.length = e.contains("len") ? json_number(e.at("len"), "edge " + es.id) : 1.0;
            s.edges.push_back(std::move(es));
        }
        for (const Json& f : field(j, "faces", "complex")) {
            ComplexSpec::FaceSpec fs;
            fs.id = string_of(field(f, "id", "face"), "face");
            for (const Json& e : field(f, "loop", "face " + fs.id)) fs.loop.push_back(string_of(e, "face " + fs.id));
            const Json& shape = field(f, "shape", "face " + fs.id);
            if (shape.is_string() && shape.get<std::string>() == "square") {
                fs.shape = SquareShape{};
            } else if (shape.is_object() && shape.contains("tri") && shape.at("tri").size() == 3) {
                TriangleShape t;
                for (int i = 0; i < 3; ++i) t.sides[i] = json_number(shape.at("tri")[i], "face " + fs.id);
                fs.shape = t;
            } else {
                throw Error(ErrorKind::InvalidInput, "face " + fs.id + ": unknown shape");
            }
            s.faces.push_back(std::move(fs));
        }
        if (j.contains("frontier")) {
            const Json& fr = j.at("frontier");
            if (fr.contains("edges"))
                for (const Json& e : fr.at("edges")) s.frontier_edges.push_back(string_of(e, "frontier"));
            if (fr.contains("vertices"))
                for (const Json& v : fr.at("vertices")) s.frontier_vertices.push_back(string_of(v, "frontier"));
        }
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("complex: ") + e.what());
    }
    return s;
}

PEComplex complex_from_json(const Json& j) { return PEComplex::build(complex_spec_from_json(j)); }

Json complex_to_json(const PEComplex& X) {
    const ComplexSpec s = X.to_spec();
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : s.vertices) j["vertices"].push_back({{"id", v}});
    j["edges"] = Json::array();
    for (const auto& e : s.edges) j["edges"].push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}, {"len", e.length}});
    j["faces"] = Json::array();
    for (const auto& f : s.faces) {
        Json shape;
        if (const auto* t = std::get_if<TriangleShape>(&f.shape))
            shape = {{"tri", {t->sides[0], t->sides[1], t->sides[2]}}};
        else
            shape = "square";
        j["faces"].push_back({{"id", f.id}, {"loop", f.loop}, {"shape", shape}});
    }
    j["frontier"] = {{"edges", s.frontier_edges}};
    if (!s.frontier_vertices.empty()) j["frontier"]["vertices"] = s.frontier_vertices;
    return j;
}

Chain2 chain_from_json(const PEComplex& X, const Json& j) {
    const Json& c = j.is_object() && j.contains("chain") ? j.at("chain") : j;
    if (!c.is_object()) throw Error(ErrorKind::InvalidInput, "chain: expected an object of face coefficients");
    Chain2 out;
    for (const auto& [id, v] : c.items()) {
        const auto f = X.face_index(id);
        if (!f) throw Error(ErrorKind::DanglingReference, "chain: unknown face " + id);
        if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, "chain: coefficient of " + id + " is not an integer");
        out.set(*f, v.get<long>());
    }
    return out;
}

Json chain_to_json(const PEComplex& X, const Chain2& c) {
    Json m = Json::object();
    for (const auto& [f, k] : c.coeff) m[X.face(f).id] = k;
    return {{"chain", m}};
}

MetricGraph graph_from_json(const Json& j) {
    MetricGraph g;
    std::map<std::string, int> ids;
    try {
        for (const Json& v : field(j, "vertices", "graph")) {
            const std::string id = v.is_object() ? string_of(field(v, "id", "graph vertex"), "graph") : string_of(v, "graph");
            if (ids.count(id)) throw Error(ErrorKind::InvalidInput, "graph: duplicate vertex " + id);
            ids[id] = g.add_vertex(id);
        }
        for (const Json& e : field(j, "edges", "graph")) {
            const Json& ends = field(e, "ends", "graph edge");
            if (!ends.is_array() || ends.size() != 2) throw Error(ErrorKind::InvalidInput, "graph edge: ends");
            int a[2];
            for (int k = 0; k < 2; ++k) {
                const auto it = ids.find(string_of(ends[k], "graph edge"));
                if (it == ids.end()) throw Error(ErrorKind::DanglingReference, "graph edge: unknown vertex");
                a[k] = it->second;
            }
            const double len = json_number(field(e, "len", "graph edge"), "graph edge");
            if (!(len > 0.0)) throw Error(ErrorKind::InvalidInput, "graph edge: length must be positive");
            g.add_edge(a[0], a[1], len);
        }
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("graph: ") + e.what());
    }
    return g;
}

Json graph_to_json(const MetricGraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& l : g.labels) j["vertices"].push_back({{"id", l}});
    j["edges"] = Json::array();
    for (int e = 0; e < g.edge_count(); ++e)
        j["edges"].push_back({{"id", "a" + std::to_string(e)},
                              {"ends", {g.labels[g.edges[e].a], g.labels[g.edges[e].b]}},
                              {"len", g.edges[e].length}});
    return j;
}

std::vector<MetricGraph> graph_family_from_json(const Json& j) {
    std::vector<MetricGraph> out;
    if (j.is_array()) {
        for (const Json& g : j) out.push_back(graph_from_json(g));
    } else if (j.is_object() && j.contains("graphs")) {
        for (const Json& g : j.at("graphs")) out.push_back(graph_from_json(g));
    } else {
        out.push_back(graph_from_json(j));
    }
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "graph family is empty");
    return out;
}

PointLocation parse_location(const PEComplex& X, const std::string& s) {
    const auto bad = [&](const std::string& why) { return Error(ErrorKind::InvalidInput, "location '" + s + "': " + why); };
    if (s.size() < 3 || s[1] != ':') throw bad("expected v:<id>, e:<id>:<t> or f:<id>:<u>,<v>");
    const std::string rest = s.substr(2);
    switch (s[0]) {
        case 'v': {
            const auto v = X.vertex_index(rest);
            if (!v) throw bad("unknown vertex");
            return PointLocation::at_vertex(*v);
        }
        case 'e': {
            const auto c = rest.rfind(':');
            if (c == std::string::npos) throw bad("missing edge parameter");
            const auto e = X.edge_index(rest.substr(0, c));
            if (!e) throw bad("unknown edge");
            const double t = parse_number(rest.substr(c + 1), "edge parameter");
            if (t < 0.0 || t > 1.0) throw bad("edge parameter outside [0,1]");
            return X.canonical(PointLocation::on_edge(*e, t));
        }
        case 'f': {
            const auto c = rest.rfind(':');
            if (c == std::string::npos) throw bad("missing face coordinates");
            const auto f = X.face_index(rest.substr(0, c));
            if (!f) throw bad("unknown face");
            const auto uv = parse_number_list(rest.substr(c + 1), "face coordinates");
            if (uv.size() != 2) throw bad("face coordinates need two numbers");
            return X.locate(*f, {uv[0], uv[1]});
        }
        default:
            throw bad("unknown carrier");
    }
}

std::string location_string(const PEComplex& X, const PointLocation& p) {
    std::ostringstream os;
    os.precision(17);
    switch (p.kind) {
        case PointLocation::Kind::Vertex:
            os << "v:" << X.vertex(p.id).id;
            break;
        case PointLocation::Kind::Edge:
            os << "e:" << X.edge(p.id).id << ":" << p.t;
            break;
        case PointLocation::Kind::Face:
            os << "f:" << X.face(p.id).id << ":" << p.uv.x << "," << p.uv.y;
            break;
    }
    return os.str();
}

Json location_to_json(const PEComplex& X, const PointLocation& p) {
    switch (p.kind) {
        case PointLocation::Kind::Vertex:
            return {{"carrier", "vertex"}, {"id", X.vertex(p.id).id}};
        case PointLocation::Kind::Edge:
            return {{"carrier", "edge"}, {"id", X.edge(p.id).id}, {"t", p.t}};
        case PointLocation::Kind::Face:
            break;
    }
    return {{"carrier", "face"}, {"id", X.face(p.id).id}, {"uv", {p.uv.x, p.uv.y}}};
}

Json graph_point_to_json(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex()) return {{"vertex", g.labels[p.vertex]}};
    return {{"edge", p.edge}, {"from", g.labels[g.edges[p.edge].a]}, {"t", p.t}};
}

}  // namespace cat0
