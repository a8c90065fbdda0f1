#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "biheig/geometry.hpp"

namespace biheig {

enum class DomainKind { UnitSquare, LShape, Slit, SquareRing };

const char* domain_name(DomainKind d);
/// Accepts square|lshape|slit|ring; throws std::invalid_argument otherwise.
DomainKind domain_from_name(const std::string& name);

/// Re-entrant corner of the domain with its cutoff sector. `frame_angle` is
/// the global angle of the local θ=0 boundary ray; the interior of the
/// domain near `origin` then spans local angles [0, omega].
struct ReentrantCorner {
    Vec2 origin;
    double omega;        // interior angle, π < ω ≤ 2π
    double frame_angle;  // θ=0 ray direction, measured from +x
    double tau;          // cutoff inner fraction in (0,1)
    double radius;       // cutoff outer radius R
};

/// Conforming triangulation. Along the slit, geometrically coincident
/// vertices are stored once per side, so edge-based connectivity sees the
/// two banks as separate boundary. Triangles are counterclockwise.
struct TriangleMesh {
    DomainKind domain = DomainKind::UnitSquare;
    int level = 0;
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<unsigned char> boundary_vertex;
    std::vector<ReentrantCorner> corners;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }

    Vec2 centroid(int t) const {
        const auto& tri = triangles[t];
        return (1.0 / 3.0) * (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]);
    }
    double area(int t) const {
        const auto& tri = triangles[t];
        return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    }
    /// Longest edge of triangle t.
    double diameter(int t) const;
    /// Maximum element diameter h.
    double mesh_size() const;
};

TriangleMesh build_initial_mesh(DomainKind domain);

/// Structured unit-square triangulation with n x n cells, all diagonals
/// lower-left to upper-right. Exposed for tests; build_initial_mesh uses
/// n = 4 for UnitSquare.
TriangleMesh build_unit_square_mesh(int n);

/// Regular (red) refinement: each triangle splits into 4 similar children
/// via edge midpoints. Midpoints are keyed by vertex-index pairs, which
/// duplicates them across the slit automatically.
TriangleMesh refine_red(const TriangleMesh& mesh);

/// Bijection between non-boundary vertices and dof indices 0..n_dofs-1.
struct DofMap {
    std::vector<int> vertex_to_dof;  // -1 for excluded vertices
    std::vector<int> dof_to_vertex;
    int n_dofs = 0;
};

DofMap interior_index(const TriangleMesh& mesh);
/// Identity map over all vertices (boundary included); test/diagnostic use.
DofMap all_vertex_index(const TriangleMesh& mesh);

/// Polar coordinates (r, θ) of `point` in the corner's local frame,
/// θ ∈ [0, ω]. `hint` is the centroid of the triangle the evaluation
/// belongs to; it picks the slit side when the point sits on the cut.
/// Throws if θ falls outside [0, ω] beyond a 1e-12 angular tolerance.
struct Polar {
    double r;
    double theta;
};
Polar local_polar(Vec2 point, const ReentrantCorner& corner, Vec2 hint);

/// Edge list with incidence counts; boundary edges have count 1.
struct EdgeInfo {
    int n_edges = 0;
    int n_boundary_edges = 0;
};
EdgeInfo edge_info(const TriangleMesh& mesh);

/// V - E + F.
int euler_characteristic(const TriangleMesh& mesh);

double total_area(const TriangleMesh& mesh);
double exact_domain_area(DomainKind d);

double min_angle(const TriangleMesh& mesh);
/// max over triangles of h_K / d_K, d_K the inscribed-ball diameter.
double shape_regularity(const TriangleMesh& mesh);

/// Plain-text export: `nv nt level`, then `x y boundary_flag` per vertex,
/// then `i j k` per triangle (0-based).
void export_mesh(const TriangleMesh& mesh, std::ostream& os);

}  // namespace biheig
