#include "cat0/modulus.hpp"

#include <algorithm>
#include <cmath>

namespace cat0 {

std::vector<EdgeMask> cycle_supports(const MetricGraph& g, int max_edges) {
    const int m = g.edge_count();
    if (m > max_edges)
        throw Error(ErrorKind::InvalidInput, "graph has " + std::to_string(m) + " edges, above the support enumeration cap");
    std::vector<EdgeMask> out;
    for (unsigned long bits = 1; bits < (1ul << m); ++bits) {
        EdgeMask Y(m);
        for (int e = 0; e < m; ++e) Y[e] = (bits >> e) & 1ul;
        if (is_cycle_support(g, Y)) out.push_back(std::move(Y));
    }
    return out;
}

std::optional<double> antipode_diameter(const MetricGraph& g, GraphPoint v, const EdgeMask& Y) {
    const auto ant = antipodal_set(g, v, Y);
    if (ant.empty()) return std::nullopt;
    return diameter(g, ant);
}

double pole_distance(const MetricGraph& g, GraphPoint v, const EdgeMask& Y, const SuspensionDescription& s) {
    const auto from_v = distances_from(g, v);
    if (s.valence() > 2) return std::min(distance_to(g, v, from_v, s.pole_a), distance_to(g, v, from_v, s.pole_b));
    if (!v.is_vertex() && Y[v.edge]) return 0.0;
    double best = kInf;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!Y[e]) continue;
        best = std::min({best, from_v[g.edges[e].a], from_v[g.edges[e].b]});
    }
    return best;
}

namespace {

struct Probe {
    double value = kInf;  // antipode diameter when (Y, v) violates the implication
    double pole_dist = kInf;
};

class SupportScan {
public:
    SupportScan(const MetricGraph& g, const EdgeMask& Y, double alpha)
        : g_(g), Y_(Y), alpha_(alpha), susp_(suspension_structure(g, Y)) {}

    void run() {
        for (int e = 0; e < g_.edge_count(); ++e) scan_edge(e);
    }

    double best = kInf;
    GraphPoint best_point;

private:
    Probe probe(GraphPoint v) const {
        Probe p;
        const auto d = antipode_diameter(g_, v, Y_);
        if (!d) return p;
        if (susp_) {
            p.pole_dist = pole_distance(g_, v, Y_, *susp_);
            if (p.pole_dist < alpha_ - 1e-12) return p;
        }
        p.value = *d;
        return p;
    }

    double f(int e, double s) {
        const GraphPoint v = canonical(g_, GraphPoint::on_edge(e, s));
        const double val = probe(v).value;
        if (val < best || (val == best && lex_less(v, best_point))) {
            best = val;
            best_point = v;
        }
        return val;
    }

    void refine(int e, double s0, double f0, double s1, double f1, int depth) {
        if (depth > 48 || s1 - s0 < 1e-11) return;
        const double sm = 0.5 * (s0 + s1);
        const double fm = f(e, sm);
        const bool fin0 = f0 < kInf, fin1 = f1 < kInf, finm = fm < kInf;
        if (fin0 && fin1 && finm) {
            const double q1 = f(e, 0.5 * (s0 + sm)), q3 = f(e, 0.5 * (sm + s1));
            const double slope = (f1 - f0) / (s1 - s0);
            auto off = [&](double s, double v) { return std::abs(v - (f0 + slope * (s - s0))); };
            if (off(sm, fm) < 1e-12 && q1 < kInf && q3 < kInf && off(0.5 * (s0 + sm), q1) < 1e-12 &&
                off(0.5 * (sm + s1), q3) < 1e-12)
                return;  // linear piece: minimum at an end point
            refine(e, s0, f0, sm, fm, depth + 1);
            refine(e, sm, fm, s1, f1, depth + 1);
            return;
        }
        if (!fin0 && !fin1 && !finm) return;
        refine(e, s0, f0, sm, fm, depth + 1);
        refine(e, sm, fm, s1, f1, depth + 1);
    }

    void scan_edge(int e) {
        const double L = g_.edges[e].length;
        const int a = g_.edges[e].a, b = g_.edges[e].b;
        const auto da = distances_from(g_, GraphPoint::at_vertex(a));
        const auto db = distances_from(g_, GraphPoint::at_vertex(b));
        std::vector<double> cuts{0.0, L};
        for (int k = 1; k < 32; ++k) cuts.push_back(L * k / 32.0);
        std::vector<int> targets;
        for (int y = 0; y < g_.edge_count(); ++y) {
            if (!Y_[y]) continue;
            targets.push_back(g_.edges[y].a);
            targets.push_back(g_.edges[y].b);
        }
        std::vector<double> levels{kPi, alpha_};
        for (int w : targets)
            for (double lvl : levels) {
                cuts.push_back(lvl - da[w]);
                cuts.push_back(L + db[w] - lvl);
            }
        std::erase_if(cuts, [&](double s) { return !(s >= 0.0 && s <= L); });
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-12; }), cuts.end());
        std::vector<double> vals;
        for (double s : cuts) vals.push_back(f(e, s));
        for (size_t i = 0; i + 1 < cuts.size(); ++i) refine(e, cuts[i], vals[i], cuts[i + 1], vals[i + 1], 0);
    }

    const MetricGraph& g_;
    const EdgeMask& Y_;
    double alpha_;
    std::optional<SuspensionDescription> susp_;
};

}  // namespace

SuspensionModulus isolated_suspension_modulus(const std::vector<MetricGraph>& family, double alpha, int max_edges) {
    if (!(alpha > 0.0 && alpha <= kPi / 2 + kTolGeom)) throw Error(ErrorKind::InvalidInput, "alpha must lie in (0, pi/2]");
    struct Job {
        int graph;
        EdgeMask Y;
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < family.size(); ++i) {
        if (girth(family[i]).length < kTwoPi - kTolGeom)
            throw Error(ErrorKind::NotCat1, "family member " + std::to_string(i) + " has girth below 2pi");
        for (auto& Y : cycle_supports(family[i], max_edges)) jobs.push_back({static_cast<int>(i), std::move(Y)});
    }
    const int n = static_cast<int>(jobs.size());
    std::vector<double> best(n, kInf);
    std::vector<GraphPoint> where(n);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n; ++j) {
        SupportScan scan(family[jobs[j].graph], jobs[j].Y, alpha);
        scan.run();
        best[j] = scan.best;
        where[j] = scan.best_point;
    }
    SuspensionModulus out;
    out.alpha = alpha;
    out.supports_examined = n;
    int arg = -1;
    for (int j = 0; j < n; ++j)
        if (best[j] < out.beta) {
            out.beta = best[j];
            arg = j;
        }
    if (arg >= 0) {
        const MetricGraph& g = family[jobs[arg].graph];
        const EdgeMask& Y = jobs[arg].Y;
        SuspensionModulus::Witness w;
        w.graph = jobs[arg].graph;
        for (int e = 0; e < g.edge_count(); ++e)
            if (Y[e]) w.support.push_back(e);
        w.point = where[arg];
        w.antipodes = antipodal_set(g, w.point, Y);
        w.diameter = best[arg];
        const auto s = suspension_structure(g, Y);
        w.support_is_suspension = s.has_value();
        if (s) w.pole_distance = pole_distance(g, w.point, Y, *s);
        out.witness = w;
    }
    return out;
}

}  // namespace cat0
