#include <deque>

#include "cat0/complex.hpp"
#include "cat0/link.hpp"

namespace cat0 {

const char* to_string(Cat0Report::Verdict v) {
    switch (v) {
        case Cat0Report::Verdict::Cat0: return "cat0";
        case Cat0Report::Verdict::NotLocallyCat0: return "not_locally_cat0";
        case Cat0Report::Verdict::LocallyCat0ScUnknown: return "locally_cat0_sc_unknown";
    }
    return "unknown";
}

bool collapses_to_point(const PEComplex& X, std::string* residual) {
    const int nv = static_cast<int>(X.vertices().size());
    const int ne = static_cast<int>(X.edges().size());
    const int nf = static_cast<int>(X.faces().size());
    std::vector<bool> face_alive(nf, true), edge_alive(ne, true), vertex_alive(nv, true);
    // Number of live face-sides on each edge (a face using an edge twice counts twice).
    std::vector<int> sides(ne, 0);
    for (const auto& f : X.faces())
        for (int e : f.loop) sides[e]++;

    std::deque<int> free_edges;
    for (int e = 0; e < ne; ++e)
        if (sides[e] == 1) free_edges.push_back(e);
    int faces_left = nf;
    while (!free_edges.empty()) {
        const int e = free_edges.front();
        free_edges.pop_front();
        if (!edge_alive[e] || sides[e] != 1) continue;
        int f = -1;
        for (int g : X.edge(e).faces)
            if (face_alive[g]) f = g;
        face_alive[f] = false;
        edge_alive[e] = false;
        --faces_left;
        for (int g : X.face(f).loop) {
            if (!edge_alive[g]) continue;
            if (--sides[g] == 1) free_edges.push_back(g);
        }
    }

    // Collapse the remaining graph through its leaves.
    std::vector<int> degree(nv, 0);
    int edges_left = 0;
    for (int e = 0; e < ne; ++e) {
        if (!edge_alive[e] || sides[e] > 0) continue;
        ++edges_left;
        degree[X.edge(e).ends[0]]++;
        degree[X.edge(e).ends[1]]++;
    }
    for (int e = 0; e < ne; ++e)
        if (edge_alive[e] && sides[e] > 0) {
            ++edges_left;
            degree[X.edge(e).ends[0]] += 2;  // pinned by a face
            degree[X.edge(e).ends[1]] += 2;
        }
    std::deque<int> leaves;
    for (int v = 0; v < nv; ++v)
        if (degree[v] == 1) leaves.push_back(v);
    int vertices_left = nv;
    // Isolated vertices only arise when the graph is a single vertex.
    while (!leaves.empty()) {
        const int v = leaves.front();
        leaves.pop_front();
        if (!vertex_alive[v] || degree[v] != 1) continue;
        for (int e : X.vertex(v).edges) {
            if (!edge_alive[e]) continue;
            edge_alive[e] = false;
            --edges_left;
            vertex_alive[v] = false;
            --vertices_left;
            const int w = X.edge(e).ends[0] == v ? X.edge(e).ends[1] : X.edge(e).ends[0];
            if (--degree[w] == 1) leaves.push_back(w);
            break;
        }
    }
    const bool point = faces_left == 0 && edges_left == 0 && vertices_left == 1;
    if (residual) {
        *residual = point ? "collapsible"
                          : std::to_string(faces_left) + " faces, " + std::to_string(edges_left) + " edges, " +
                                std::to_string(vertices_left) + " vertices remain after collapsing";
    }
    return point;
}

Cat0Report validate_cat0(const PEComplex& X) {
    Cat0Report r;
    r.min_girth = kInf;
    for (int v = 0; v < static_cast<int>(X.vertices().size()); ++v) {
        const LinkGraph L = link_at(X, PointLocation::at_vertex(v), true);
        const GirthResult g = girth(L.graph);
        if (g.length < r.min_girth) {
            r.min_girth = g.length;
            if (g.length < kTwoPi - kTolGeom) {
                r.offending_vertex = v;
                r.witness_length = g.length;
                r.witness_faces.clear();
                for (int e : g.cycle) r.witness_faces.push_back(L.info[e].face);
            }
        }
    }
    if (r.offending_vertex) {
        r.verdict = Cat0Report::Verdict::NotLocallyCat0;
        r.sc_evidence = "not evaluated";
        return r;
    }
    r.verdict = collapses_to_point(X, &r.sc_evidence) ? Cat0Report::Verdict::Cat0
                                                      : Cat0Report::Verdict::LocallyCat0ScUnknown;
    return r;
}

}  // namespace cat0
