#include "cat0/metric_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace cat0 {

int MetricGraph::add_vertex(std::string label) {
    labels.push_back(std::move(label));
    return vertex_count() - 1;
}

int MetricGraph::add_edge(int a, int b, double length) {
    edges.push_back({a, b, length});
    return edge_count() - 1;
}

double MetricGraph::total_length() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.length;
    return s;
}

EdgeMask full_mask(const MetricGraph& g) { return EdgeMask(g.edges.size(), true); }

GraphPoint canonical(const MetricGraph& g, GraphPoint p) {
    if (p.is_vertex()) return p;
    const auto& e = g.edges.at(p.edge);
    if (p.t <= kTolGeom) return GraphPoint::at_vertex(e.a);
    if (p.t >= e.length - kTolGeom) return GraphPoint::at_vertex(e.b);
    return p;
}

bool lex_less(const GraphPoint& a, const GraphPoint& b) {
    const auto key = [](const GraphPoint& p) {
        return std::make_tuple(p.is_vertex() ? p.vertex : std::numeric_limits<int>::max(), p.edge, p.t);
    };
    return key(a) < key(b);
}

bool same_point(const MetricGraph& g, GraphPoint a, GraphPoint b, double tol) {
    a = canonical(g, a);
    b = canonical(g, b);
    if (a.is_vertex() || b.is_vertex()) return a.vertex == b.vertex && a.is_vertex() && b.is_vertex();
    return a.edge == b.edge && std::abs(a.t - b.t) <= tol;
}

namespace {

bool in_mask(const EdgeMask& mask, int e) { return mask.empty() || mask[e]; }

std::vector<std::vector<std::pair<int, int>>> adjacency(const MetricGraph& g, const EdgeMask& mask, int skip = -1) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (e == skip || !in_mask(mask, e)) continue;
        adj[g.edges[e].a].emplace_back(g.edges[e].b, e);
        if (g.edges[e].a != g.edges[e].b) adj[g.edges[e].b].emplace_back(g.edges[e].a, e);
    }
    return adj;
}

std::vector<double> dijkstra(const MetricGraph& g, const std::vector<std::vector<std::pair<int, int>>>& adj,
                             std::vector<double> dist, std::vector<int>* pred_edge = nullptr) {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    if (pred_edge) pred_edge->assign(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[v] < kInf) pq.emplace(dist[v], v);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (auto [w, e] : adj[v]) {
            const double nd = d + g.edges[e].length;
            if (nd < dist[w]) {
                dist[w] = nd;
                if (pred_edge) (*pred_edge)[w] = e;
                pq.emplace(nd, w);
            }
        }
    }
    return dist;
}

std::vector<double> seed(const MetricGraph& g, GraphPoint p) {
    std::vector<double> dist(g.vertex_count(), kInf);
    if (p.is_vertex()) {
        dist[p.vertex] = 0.0;
    } else {
        const auto& e = g.edges.at(p.edge);
        dist[e.a] = std::min(dist[e.a], p.t);
        dist[e.b] = std::min(dist[e.b], e.length - p.t);
    }
    return dist;
}

}  // namespace

std::vector<double> distances_from(const MetricGraph& g, GraphPoint p, const EdgeMask& mask) {
    return dijkstra(g, adjacency(g, mask), seed(g, p));
}

double distance_to(const MetricGraph& g, GraphPoint p, const std::vector<double>& from_p, GraphPoint q) {
    if (q.is_vertex()) return from_p[q.vertex];
    const auto& e = g.edges.at(q.edge);
    double d = std::min(from_p[e.a] + q.t, from_p[e.b] + e.length - q.t);
    if (!p.is_vertex() && p.edge == q.edge) {
        const double direct = std::abs(p.t - q.t);
        d = std::min(d, direct);
        if (e.a == e.b) d = std::min(d, e.length - direct);
    }
    return d;
}

double distance(const MetricGraph& g, GraphPoint p, GraphPoint q, const EdgeMask& mask) {
    return distance_to(g, p, distances_from(g, p, mask), q);
}

GirthResult girth(const MetricGraph& g, const EdgeMask& mask) {
    GirthResult best;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!in_mask(mask, e)) continue;
        const auto& ed = g.edges[e];
        if (ed.a == ed.b) {
            if (ed.length < best.length) best = {ed.length, {e}};
            continue;
        }
        if (ed.length >= best.length) continue;
        std::vector<int> pred;
        auto dist = dijkstra(g, adjacency(g, mask, e), seed(g, GraphPoint::at_vertex(ed.a)), &pred);
        const double len = dist[ed.b] + ed.length;
        if (len < best.length) {
            best.length = len;
            best.cycle = {e};
            for (int v = ed.b; v != ed.a;) {
                const int pe = pred[v];
                best.cycle.push_back(pe);
                v = g.edges[pe].a == v ? g.edges[pe].b : g.edges[pe].a;
            }
        }
    }
    return best;
}

std::vector<GraphPoint> antipodal_set(const MetricGraph& g, GraphPoint v, const EdgeMask& Y, double tol) {
    const auto from_v = distances_from(g, v);
    std::vector<GraphPoint> out;
    auto push = [&](GraphPoint q) {
        q = canonical(g, q);
        if (std::abs(distance_to(g, v, from_v, q) - kPi) > tol) return;
        for (const auto& r : out)
            if (same_point(g, r, q, tol)) return;
        out.push_back(q);
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!Y[e]) continue;
        const auto& ed = g.edges[e];
        push(GraphPoint::at_vertex(ed.a));
        push(GraphPoint::at_vertex(ed.b));
        // Distance along the edge is piecewise linear with slopes +-1; its
        // level-pi crossings sit at these parameters.
        std::vector<double> cand{kPi - from_v[ed.a], ed.length + from_v[ed.b] - kPi};
        if (!v.is_vertex() && v.edge == e) {
            cand.push_back(v.t + kPi);
            cand.push_back(v.t - kPi);
            cand.push_back(v.t + kPi - ed.length);
            cand.push_back(v.t - kPi + ed.length);
        }
        for (double t : cand)
            if (t > -tol && t < ed.length + tol) push(GraphPoint::on_edge(e, std::clamp(t, 0.0, ed.length)));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

double diameter(const MetricGraph& g, const std::vector<GraphPoint>& pts) {
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto from_i = distances_from(g, pts[i]);
        for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance_to(g, pts[i], from_i, pts[j]));
    }
    return d;
}

namespace {

// Point at arclength `s` along a closed walk of edges starting at `start`.
GraphPoint walk_point(const MetricGraph& g, const std::vector<int>& walk, int start, double s) {
    int v = start;
    for (int e : walk) {
        const auto& ed = g.edges[e];
        const bool forward = ed.a == v;
        if (s <= ed.length) return canonical(g, GraphPoint::on_edge(e, forward ? s : ed.length - s));
        s -= ed.length;
        v = forward ? ed.b : ed.a;
    }
    return GraphPoint::at_vertex(v);
}

}  // namespace

std::optional<SuspensionDescription> suspension_structure(const MetricGraph& g, const EdgeMask& Y, double tol) {
    std::vector<int> degree(g.vertex_count(), 0);
    int first_edge = -1;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!Y[e]) continue;
        if (first_edge < 0) first_edge = e;
        degree[g.edges[e].a]++;
        degree[g.edges[e].b]++;
    }
    if (first_edge < 0) return std::nullopt;

    // Connectivity of Y.
    auto adj = adjacency(g, Y);
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<int> stack{g.edges[first_edge].a};
    seen[stack.back()] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    std::vector<int> branch;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (degree[v] == 0) continue;
        if (!seen[v] || degree[v] < 2) return std::nullopt;
        if (degree[v] >= 3) branch.push_back(v);
    }

    const auto next_edge = [&](int v, int from_edge) {
        for (auto [w, e] : adj[v])
            if (e != from_edge) return e;
        return -1;
    };

    if (branch.empty()) {
        // A single cycle; a suspension of two points iff its length is 2pi.
        int start = -1;
        for (int v = 0; v < g.vertex_count() && start < 0; ++v)
            if (degree[v] > 0) start = v;
        std::vector<int> walk;
        double total = 0.0;
        int v = start, e = -1;
        do {
            e = next_edge(v, e);
            walk.push_back(e);
            total += g.edges[e].length;
            v = g.edges[e].a == v ? g.edges[e].b : g.edges[e].a;
        } while (v != start);
        if (std::abs(total - kTwoPi) > tol) return std::nullopt;
        SuspensionDescription s;
        s.pole_a = GraphPoint::at_vertex(start);
        s.pole_b = walk_point(g, walk, start, kPi);
        std::vector<int> first, second;
        double acc = 0.0;
        for (int w : walk) {
            (acc < kPi - tol ? first : second).push_back(w);
            acc += g.edges[w].length;
        }
        // An edge straddling the far pole belongs to both arcs.
        if (!s.pole_b.is_vertex()) second.insert(second.begin(), s.pole_b.edge);
        s.arcs = {first, second};
        return s;
    }

    if (branch.size() != 2 || degree[branch[0]] != degree[branch[1]]) return std::nullopt;
    SuspensionDescription s;
    s.pole_a = GraphPoint::at_vertex(branch[0]);
    s.pole_b = GraphPoint::at_vertex(branch[1]);
    int used = 0;
    for (auto [w0, e0] : adj[branch[0]]) {
        std::vector<int> arc{e0};
        double len = g.edges[e0].length;
        int v = w0, e = e0;
        if (g.edges[e0].a == g.edges[e0].b) return std::nullopt;
        while (v != branch[0] && v != branch[1]) {
            e = next_edge(v, e);
            arc.push_back(e);
            len += g.edges[e].length;
            v = g.edges[e].a == v ? g.edges[e].b : g.edges[e].a;
        }
        if (v != branch[1] || std::abs(len - kPi) > tol) return std::nullopt;
        used += static_cast<int>(arc.size());
        s.arcs.push_back(std::move(arc));
    }
    const int y_edges = static_cast<int>(std::count(Y.begin(), Y.end(), true));
    if (used != y_edges) return std::nullopt;
    return s;
}

bool is_cycle_support(const MetricGraph& g, const EdgeMask& Y) {
    bool any = false;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!Y[e]) continue;
        any = true;
        const auto& ed = g.edges[e];
        if (ed.a == ed.b) continue;
        auto adj = adjacency(g, Y, e);
        std::vector<bool> seen(g.vertex_count(), false);
        std::vector<int> stack{ed.a};
        seen[ed.a] = true;
        while (!stack.empty() && !seen[ed.b]) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, x] : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        if (!seen[ed.b]) return false;
    }
    return any;
}

}  // namespace cat0
