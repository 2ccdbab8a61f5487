#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "cat0/fixtures.hpp"
#include "cat0/reports.hpp"

namespace cat0 {

namespace {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotACycle:
        case ErrorKind::NoAntipode:
        case ErrorKind::NotNonpositivelyCurved:
            return 2;
        default:
            return 1;
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << text;
}

void apply_thread_cap() {
    const char* env = std::getenv("CAT0_THREADS");
    if (!env || !*env) return;
    const double n = parse_number(env, "CAT0_THREADS");
    if (n < 1 || n != std::floor(n)) throw Error(ErrorKind::InvalidInput, "CAT0_THREADS must be a positive integer");
    omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite truncations of piecewise-Euclidean CAT(0) 2-complexes", "cat0"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, seed_s = "1", area_tol_s = "0.01", eps_s = "0.05", samples_s;
    app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
    app.add_option("--seed", seed_s, "Sampling seed");
    app.add_option("--area-tol", area_tol_s, "Relative ball-area tolerance");
    app.add_option("--eps", eps_s, "Refined-graph spacing for geodesic upper bounds");
    app.add_option("--samples", samples_s, "Number of sampled pairs for batch modes");

    std::string complex_path, chain_path, at, from, to, through, graphs, alpha_s, radius_s, radii_s, svg_path,
        name, size_s = "10", thetas_s = "0.1,0.05", rings_s = "4", out_dir, R_s, r0_s = "0.5", r2_s;

    auto* validate = app.add_subcommand("validate", "Check the link condition and simple connectivity");
    validate->add_option("complex", complex_path, "Complex JSON")->required();

    auto* link = app.add_subcommand("link", "Link graph at a point");
    link->add_option("--complex", complex_path)->required();
    link->add_option("--at", at)->required();

    auto* modulus = app.add_subcommand("suspension-modulus", "Isolated-suspension modulus of a graph family");
    modulus->add_option("--graphs", graphs, "Graph or graph-family JSON")->required();
    modulus->add_option("--alpha", alpha_s)->required();

    auto* geo = app.add_subcommand("geodesic", "Exact geodesic between two points");
    geo->add_option("--complex", complex_path)->required();
    geo->add_option("--from", from);
    geo->add_option("--to", to);

    auto* ext = app.add_subcommand("extend", "Extend a geodesic inside the support of a chain");
    ext->add_option("--chain", chain_path)->required();
    ext->add_option("--complex", complex_path);
    ext->add_option("--from", from);
    ext->add_option("--through", through);
    ext->add_option("--radius", radius_s)->required();

    auto* sup = app.add_subcommand("support", "Support set of a chain");
    sup->add_option("--chain", chain_path)->required();
    sup->add_option("--complex", complex_path);

    auto* fix = app.add_subcommand("fixture", "Write a fixture complex and chain");
    fix->add_option("--name", name)->required();
    fix->add_option("--size", size_s);
    fix->add_option("--thetas", thetas_s, "Cone excess angles for cone_points");
    fix->add_option("--rings", rings_s, "Radius of the glasses planes");
    fix->add_option("--out", out_dir)->required();

    auto* dens = app.add_subcommand("density", "Density ratios area/r^2 of the support");
    dens->add_option("--chain", chain_path)->required();
    dens->add_option("--complex", complex_path);
    dens->add_option("--center", at)->required();
    dens->add_option("--radii", radii_s)->required();
    dens->add_option("--svg", svg_path);

    auto* cls = app.add_subcommand("classify", "Local type of the support at a point");
    cls->add_option("--chain", chain_path)->required();
    cls->add_option("--complex", complex_path);
    cls->add_option("--at", at)->required();

    auto* fib = app.add_subcommand("fibers", "Fiber graph of the distance sphere in the support");
    fib->add_option("--chain", chain_path)->required();
    fib->add_option("--complex", complex_path);
    fib->add_option("--center", at)->required();
    fib->add_option("--radius", radius_s)->required();

    auto* br = app.add_subcommand("branch", "Search for an embedded tripod ball");
    br->add_option("--chain", chain_path)->required();
    br->add_option("--complex", complex_path);
    br->add_option("--center", at)->required();
    br->add_option("--R", R_s)->required();
    br->add_option("--r0", r0_s);

    auto* dec = app.add_subcommand("decompose", "Half-plane decomposition of a square-complex support");
    dec->add_option("--chain", chain_path)->required();
    dec->add_option("--complex", complex_path);
    dec->add_option("--center", at)->required();
    dec->add_option("--r2", r2_s)->required();
    dec->add_option("--alpha", alpha_s);
    dec->add_option("--svg", svg_path);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        apply_thread_cap();
        RunConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(parse_number(seed_s, "--seed"));
        cfg.area_tol = parse_number(area_tol_s, "--area-tol");
        cfg.refine_eps = parse_number(eps_s, "--eps");
        if (!samples_s.empty()) cfg.samples = static_cast<int>(parse_number(samples_s, "--samples"));
        cfg.check();

        CLI::App* cmd = app.get_subcommands().front();
        const std::string command = cmd->get_name();
        const auto load_complex = [&]() {
            if (complex_path.empty()) {
                if (chain_path.empty()) throw Error(ErrorKind::InvalidInput, "no complex given");
                complex_path = (fs::path(chain_path).parent_path() / "complex.json").string();
            }
            return complex_from_json(load_json(complex_path));
        };
        const auto number = [](const std::string& s, const char* what) { return parse_number(s, what); };

        Report rep;
        if (command == "validate") {
            rep = validate_report(load_complex());
        } else if (command == "link") {
            const PEComplex X = load_complex();
            rep = link_report(X, parse_location(X, at));
        } else if (command == "suspension-modulus") {
            rep = suspension_modulus_report(graph_family_from_json(load_json(graphs)), number(alpha_s, "--alpha"));
        } else if (command == "geodesic") {
            const PEComplex X = load_complex();
            if (!from.empty() || !to.empty()) {
                if (from.empty() || to.empty()) throw Error(ErrorKind::InvalidInput, "geodesic needs both --from and --to");
                rep = geodesic_report(X, parse_location(X, from), parse_location(X, to), cfg);
            } else {
                rep = geodesic_batch_report(X, cfg);
            }
        } else if (command == "extend") {
            const PEComplex X = load_complex();
            const Chain2 c = chain_from_json(X, load_json(chain_path));
            const double R = number(radius_s, "--radius");
            if (!from.empty() || !through.empty()) {
                if (from.empty() || through.empty()) throw Error(ErrorKind::InvalidInput, "extend needs both --from and --through");
                rep = extend_report(X, c, parse_location(X, from), parse_location(X, through), R);
            } else {
                rep = extend_batch_report(X, c, R, cfg);
            }
        } else if (command == "support") {
            const PEComplex X = load_complex();
            rep = support_report(X, chain_from_json(X, load_json(chain_path)));
        } else if (command == "fixture") {
            const double size = number(size_s, "--size");
            if (size < 1 || size != std::floor(size)) throw Error(ErrorKind::InvalidInput, "--size must be a positive integer");
            const double rings = number(rings_s, "--rings");
            const Fixture F = name == "glasses" ? glasses_fixture(static_cast<int>(size), static_cast<int>(rings))
                                                : make_fixture(name, static_cast<int>(size),
                                                               parse_number_list(thetas_s, "--thetas"));
            fs::create_directories(out_dir);
            save_json((fs::path(out_dir) / "complex.json").string(), complex_to_json(F.X));
            save_json((fs::path(out_dir) / "chain.json").string(), chain_to_json(F.X, F.chain));
            Json special = Json::array();
            for (int v : F.special_vertices) special.push_back("v:" + F.X.vertex(v).id);
            rep.body = {{"name", F.name},
                        {"size", static_cast<int>(size)},
                        {"files", {"complex.json", "chain.json"}},
                        {"counts",
                         {{"vertices", F.X.vertices().size()}, {"edges", F.X.edges().size()}, {"faces", F.X.faces().size()}}},
                        {"special_points", special}};
            save_json((fs::path(out_dir) / "fixture.json").string(), envelope(command, cfg, rep));
        } else if (command == "density") {
            const PEComplex X = load_complex();
            rep = density_report(X, chain_from_json(X, load_json(chain_path)), parse_location(X, at),
                                 parse_number_list(radii_s, "--radii"), cfg);
            if (!svg_path.empty()) write_text(svg_path, density_svg(rep.body));
        } else if (command == "classify") {
            const PEComplex X = load_complex();
            rep = classify_report(X, chain_from_json(X, load_json(chain_path)), parse_location(X, at));
        } else if (command == "fibers") {
            const PEComplex X = load_complex();
            rep = fibers_report(X, chain_from_json(X, load_json(chain_path)), parse_location(X, at),
                                number(radius_s, "--radius"));
        } else if (command == "branch") {
            const PEComplex X = load_complex();
            rep = branch_report(X, chain_from_json(X, load_json(chain_path)), parse_location(X, at),
                                number(r0_s, "--r0"), number(R_s, "--R"));
        } else if (command == "decompose") {
            const PEComplex X = load_complex();
            const SupportSet S = support(X, chain_from_json(X, load_json(chain_path)));
            const double alpha = alpha_s.empty() ? kPi / 16 : number(alpha_s, "--alpha");
            const Decomposition D = decompose(X, S, parse_location(X, at), number(r2_s, "--r2"), alpha);
            rep = decomposition_report(X, D);
            if (!svg_path.empty()) write_text(svg_path, decomposition_svg(X, D));
        }
        const Json report = envelope(command, cfg, rep);
        if (out_path.empty())
            out << dump_json(report);
        else
            save_json(out_path, report);
        return rep.violation ? 2 : 0;
    } catch (const Error& e) {
        err << dump_json({{"error", e.what()}, {"kind", to_string(e.kind())}});
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << dump_json({{"error", e.what()}, {"kind", "internal"}});
        return 1;
    }
}

}  // namespace cat0
