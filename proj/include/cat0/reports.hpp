#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cat0/flat_structure.hpp"
#include "cat0/halfplanes.hpp"
#include "cat0/io.hpp"

namespace cat0 {

inline constexpr const char* kReportVersion = "1";

/// Settings shared by all commands; every report embeds them.
struct RunConfig {
    double area_tol = 1e-2;     // relative ball-area tolerance
    double refine_eps = 0.05;   // refined-graph spacing for upper bounds
    std::uint64_t seed = 1;
    int samples = 100;
    void check() const;  // InvalidInput when a value is out of range
    Json to_json() const;
};

/// A report body plus whether it records a property violation (exit 2).
struct Report {
    Json body;
    bool violation = false;
};

/// Wraps a body with the command name, version and tolerances.
Json envelope(const std::string& command, const RunConfig& cfg, const Report& r);

Report validate_report(const PEComplex& X);
Report link_report(const PEComplex& X, const PointLocation& x);
Report suspension_modulus_report(const std::vector<MetricGraph>& family, double alpha);
Report geodesic_report(const PEComplex& X, const PointLocation& p, const PointLocation& q, const RunConfig& cfg);
/// Random pairs of points of X, with refined-graph upper bounds.
Report geodesic_batch_report(const PEComplex& X, const RunConfig& cfg);
Report extend_report(const PEComplex& X, const Chain2& c, const PointLocation& p, const PointLocation& x, double R);
/// Random pairs of points of the support.
Report extend_batch_report(const PEComplex& X, const Chain2& c, double R, const RunConfig& cfg);
Report support_report(const PEComplex& X, const Chain2& c);
Report density_report(const PEComplex& X, const Chain2& c, const PointLocation& p, const std::vector<double>& radii,
                      const RunConfig& cfg);
Report classify_report(const PEComplex& X, const Chain2& c, const PointLocation& x);
Report fibers_report(const PEComplex& X, const Chain2& c, const PointLocation& p, double r);
Report branch_report(const PEComplex& X, const Chain2& c, const PointLocation& p, double r0, double R);
Report decomposition_report(const PEComplex& X, const Decomposition& D);

std::string density_svg(const Json& density_body);
std::string decomposition_svg(const PEComplex& X, const Decomposition& D);

/// Command-line entry point: returns 0 on success, 1 on input errors and
/// 2 when a property violation is detected.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cat0
