#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cat0 {

/// Global comparison tolerance for lengths, coordinates and angles.
inline constexpr double kTolGeom = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
    InvalidInput,
    ShapeMismatch,
    DanglingReference,
    OpenLoop,
    Disconnected,
    OutsideFace,
    FrontierPoint,
    TruncationExit,
    NotNonpositivelyCurved,
    NoAntipode,
    NotACycle,
    NotCat1,
    TruncationTooSmall,
    Inconclusive,
    PreconditionViolated,
    SubdivisionLimit,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Angle of a vector in (-pi, pi].
inline double heading(Vec2 v) { return std::atan2(v.y, v.x); }

/// Reduces an angle to [0, 2pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

/// Unsigned angle in [0, pi] between two nonzero vectors. Every corner
/// angle and link-direction comparison goes through here.
inline double angle_between(Vec2 a, Vec2 b) {
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

/// Counterclockwise angle in [0, 2pi) turning a onto b.
inline double ccw_angle(Vec2 a, Vec2 b) { return wrap_angle(std::atan2(cross(a, b), dot(a, b))); }

/// Rigid motion x -> R x + t with R orthogonal (rotation or reflection).
struct Rigid2 {
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};  // row-major
    Vec2 t{};

    Vec2 apply(Vec2 p) const { return {m[0] * p.x + m[1] * p.y + t.x, m[2] * p.x + m[3] * p.y + t.y}; }
    Vec2 apply_dir(Vec2 v) const { return {m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y}; }
    bool reflects() const { return m[0] * m[3] - m[1] * m[2] < 0.0; }

    /// (*this)(other(x))
    Rigid2 compose(const Rigid2& other) const {
        Rigid2 r;
        r.m = {m[0] * other.m[0] + m[1] * other.m[2], m[0] * other.m[1] + m[1] * other.m[3],
               m[2] * other.m[0] + m[3] * other.m[2], m[2] * other.m[1] + m[3] * other.m[3]};
        r.t = apply(other.t);
        return r;
    }

    Rigid2 inverse() const {
        Rigid2 r;
        r.m = {m[0], m[2], m[1], m[3]};
        r.t = -r.apply_dir(t);
        return r;
    }

    /// The motion sending segment (a0, a1) onto (b0, b1), choosing the
    /// orientation that puts `side_a` (a point off the first segment) on the
    /// opposite side from `side_b` relative to the image segment.
    static Rigid2 glue(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, Vec2 side_a, Vec2 side_b);
};

/// Corner angle at `apex` of a Euclidean triangle with side lengths
/// (adjacent1, adjacent2, opposite), via the law of cosines.
double corner_angle(double adjacent1, double adjacent2, double opposite);

}  // namespace cat0
