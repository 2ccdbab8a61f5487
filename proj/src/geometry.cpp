#include "cat0/geometry.hpp"

#include <algorithm>

namespace cat0 {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid_input";
        case ErrorKind::ShapeMismatch: return "shape_mismatch";
        case ErrorKind::DanglingReference: return "dangling_reference";
        case ErrorKind::OpenLoop: return "open_loop";
        case ErrorKind::Disconnected: return "disconnected";
        case ErrorKind::OutsideFace: return "outside_face";
        case ErrorKind::FrontierPoint: return "frontier_point";
        case ErrorKind::TruncationExit: return "truncation_exit";
        case ErrorKind::NotNonpositivelyCurved: return "not_nonpositively_curved";
        case ErrorKind::NoAntipode: return "no_antipode";
        case ErrorKind::NotACycle: return "not_a_cycle";
        case ErrorKind::NotCat1: return "not_cat1";
        case ErrorKind::TruncationTooSmall: return "truncation_too_small";
        case ErrorKind::Inconclusive: return "inconclusive";
        case ErrorKind::PreconditionViolated: return "precondition_violated";
        case ErrorKind::SubdivisionLimit: return "subdivision_limit";
    }
    return "unknown";
}

Rigid2 Rigid2::glue(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, Vec2 side_a, Vec2 side_b) {
    const double rot = heading(b1 - b0) - heading(a1 - a0);
    const double c = std::cos(rot), s = std::sin(rot);
    Rigid2 r;
    r.m = {c, -s, s, c};
    r.t = b0 - r.apply_dir(a0);
    const Vec2 axis = b1 - b0;
    const double image_side = cross(axis, r.apply(side_a) - b0);
    const double other_side = cross(axis, side_b - b0);
    if (image_side * other_side > 0.0) {
        // Reflect across the line through b0 along axis.
        const Vec2 u = axis / norm(axis);
        Rigid2 refl;
        refl.m = {u.x * u.x - u.y * u.y, 2 * u.x * u.y, 2 * u.x * u.y, u.y * u.y - u.x * u.x};
        refl.t = b0 - refl.apply_dir(b0);
        r = refl.compose(r);
    }
    return r;
}

double corner_angle(double adjacent1, double adjacent2, double opposite) {
    const double c = (adjacent1 * adjacent1 + adjacent2 * adjacent2 - opposite * opposite) /
                     (2.0 * adjacent1 * adjacent2);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace cat0
