#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cat0/geometry.hpp"

namespace cat0 {

struct SquareShape {};
struct TriangleShape {
    std::array<double, 3> sides{};  // lengths of loop edges 0, 1, 2
};
using FaceShape = std::variant<SquareShape, TriangleShape>;

/// Declarative description of a complex, as read from JSON.
struct ComplexSpec {
    struct EdgeSpec {
        std::string id;
        std::array<std::string, 2> ends;
        double length = 1.0;
    };
    struct FaceSpec {
        std::string id;
        std::vector<std::string> loop;
        FaceShape shape;
    };
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<FaceSpec> faces;
    std::vector<std::string> frontier_edges;
    std::vector<std::string> frontier_vertices;
};

struct Vertex {
    std::string id;
    std::vector<int> edges;
    std::vector<std::pair<int, int>> corners;  // (face, corner index)
    bool frontier = false;
};

struct Edge {
    std::string id;
    std::array<int, 2> ends{};
    double length = 0.0;
    std::vector<int> faces;
    bool frontier = false;
};

/// A polygon face with intrinsic coordinates. Corner i sits at vertex
/// verts[i]; loop edge i runs from corner i to corner i+1.
struct Face {
    std::string id;
    FaceShape shape;
    std::vector<int> loop;
    std::vector<int> verts;
    std::vector<bool> forward;  // loop edge i traversed from ends[0] to ends[1]
    std::vector<Vec2> corners;
    std::vector<double> angles;  // interior angle at each corner
    double area = 0.0;

    int size() const { return static_cast<int>(loop.size()); }
    bool is_square() const { return std::holds_alternative<SquareShape>(shape); }
    /// Position along loop edge i at edge parameter t (measured from ends[0]).
    Vec2 edge_point(int i, double t) const;
    /// Loop index of edge `e` in this face, or -1.
    int loop_index(int e) const;
    Vec2 centroid() const;
    bool contains(Vec2 p, double tol = kTolGeom) const;
};

/// A point of the complex, carried by the lowest-dimensional cell containing it.
struct PointLocation {
    enum class Kind { Vertex, Edge, Face };
    Kind kind = Kind::Vertex;
    int id = -1;
    double t = 0.0;  // edge parameter from ends[0], Edge carriers only
    Vec2 uv{};       // intrinsic coordinates, Face carriers only

    static PointLocation at_vertex(int v) { return {Kind::Vertex, v, 0.0, {}}; }
    static PointLocation on_edge(int e, double t) { return {Kind::Edge, e, t, {}}; }
    static PointLocation in_face(int f, Vec2 uv) { return {Kind::Face, f, 0.0, uv}; }
};

bool same_point(const PointLocation& a, const PointLocation& b, double tol = kTolGeom);

/// Finite piecewise-Euclidean 2-complex of triangles and unit squares.
/// Immutable after construction.
class PEComplex {
public:
    static PEComplex build(const ComplexSpec& spec);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Vertex& vertex(int i) const { return vertices_.at(i); }
    const Edge& edge(int i) const { return edges_.at(i); }
    const Face& face(int i) const { return faces_.at(i); }

    std::optional<int> vertex_index(const std::string& id) const;
    std::optional<int> edge_index(const std::string& id) const;
    std::optional<int> face_index(const std::string& id) const;

    bool all_squares() const;
    bool on_frontier(const PointLocation& p) const;

    /// Coordinates of `p` in the frame of face `f`; `p` must lie on the
    /// closed face.
    Vec2 position_in_face(const PointLocation& p, int f) const;
    /// Faces whose closure contains `p`.
    std::vector<int> faces_at(const PointLocation& p) const;
    /// Canonical carrier for a point given by face coordinates.
    PointLocation locate(int f, Vec2 uv) const;
    PointLocation canonical(const PointLocation& p) const;

    ComplexSpec to_spec() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::unordered_map<std::string, int> vertex_ids_, edge_ids_, face_ids_;
};

/// Outcome of the local link condition and the simple-connectivity check.
struct Cat0Report {
    enum class Verdict { Cat0, NotLocallyCat0, LocallyCat0ScUnknown };
    Verdict verdict = Verdict::Cat0;
    std::optional<int> offending_vertex;
    std::vector<int> witness_faces;  // face corners forming the short link cycle
    double witness_length = 0.0;
    double min_girth = 0.0;
    std::string sc_evidence;  // "collapsible" or the residual after collapsing
};

const char* to_string(Cat0Report::Verdict v);

Cat0Report validate_cat0(const PEComplex& X);

/// Collapses free faces and free edges; true when a single vertex remains.
bool collapses_to_point(const PEComplex& X, std::string* residual = nullptr);

}  // namespace cat0
