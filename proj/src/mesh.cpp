#include "biheig/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace biheig {

namespace {

constexpr double kPi = 3.14159265358979323846;

uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

/// Edge -> incidence count, iteration-order independent.
std::unordered_map<uint64_t, int> edge_counts(const TriangleMesh& mesh) {
    std::unordered_map<uint64_t, int> counts;
    counts.reserve(mesh.triangles.size() * 2);
    for (const auto& t : mesh.triangles) {
        ++counts[edge_key(t[0], t[1])];
        ++counts[edge_key(t[1], t[2])];
        ++counts[edge_key(t[2], t[0])];
    }
    return counts;
}

void recompute_boundary_flags(TriangleMesh& mesh) {
    mesh.boundary_vertex.assign(mesh.vertices.size(), 0);
    for (const auto& [key, count] : edge_counts(mesh)) {
        if (count == 1) {
            mesh.boundary_vertex[key >> 32] = 1;
            mesh.boundary_vertex[key & 0xffffffffu] = 1;
        }
    }
}

/// Structured n x n cell grid over (0,1)^2. `keep` selects cells,
/// `slash` picks the diagonal (true: lower-left to upper-right).
TriangleMesh build_structured(DomainKind domain, int n,
                              const std::function<bool(int, int)>& keep,
                              const std::function<bool(int, int)>& slash) {
    TriangleMesh mesh;
    mesh.domain = domain;
    mesh.level = 0;

    std::vector<int> grid_to_vertex(static_cast<size_t>((n + 1) * (n + 1)), -1);
    auto gid = [n](int i, int j) { return j * (n + 1) + i; };
    auto vertex_of = [&](int i, int j) {
        int& v = grid_to_vertex[static_cast<size_t>(gid(i, j))];
        if (v < 0) {
            v = mesh.n_vertices();
            mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        }
        return v;
    };

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!keep(i, j)) continue;
            const int v00 = vertex_of(i, j);
            const int v10 = vertex_of(i + 1, j);
            const int v01 = vertex_of(i, j + 1);
            const int v11 = vertex_of(i + 1, j + 1);
            if (slash(i, j)) {
                mesh.triangles.push_back({v00, v10, v11});
                mesh.triangles.push_back({v00, v11, v01});
            } else {
                mesh.triangles.push_back({v00, v10, v01});
                mesh.triangles.push_back({v10, v11, v01});
            }
        }
    }
    return mesh;
}

/// Duplicate vertices lying on the slit {1/2 < x <= 1, y = 1/2}; triangles
/// below the cut are re-pointed at the lower copies. Coordinates are exact
/// dyadic rationals, so the comparisons are exact.
void split_slit(TriangleMesh& mesh) {
    std::vector<int> lower_copy(mesh.vertices.size(), -1);
    const int nv = mesh.n_vertices();
    for (int v = 0; v < nv; ++v) {
        const Vec2 p = mesh.vertices[v];
        if (p.y == 0.5 && p.x > 0.5) {
            lower_copy[static_cast<size_t>(v)] = mesh.n_vertices();
            mesh.vertices.push_back(p);
        }
    }
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        if (mesh.centroid(t).y >= 0.5) continue;
        for (int& v : mesh.triangles[t]) {
            if (v < nv && lower_copy[static_cast<size_t>(v)] >= 0) {
                v = lower_copy[static_cast<size_t>(v)];
            }
        }
    }
}

}  // namespace

const char* domain_name(DomainKind d) {
    switch (d) {
        case DomainKind::UnitSquare: return "square";
        case DomainKind::LShape: return "lshape";
        case DomainKind::Slit: return "slit";
        case DomainKind::SquareRing: return "ring";
    }
    return "?";
}

DomainKind domain_from_name(const std::string& name) {
    if (name == "square") return DomainKind::UnitSquare;
    if (name == "lshape") return DomainKind::LShape;
    if (name == "slit") return DomainKind::Slit;
    if (name == "ring") return DomainKind::SquareRing;
    throw std::invalid_argument("unknown domain '" + name + "' (square|lshape|slit|ring)");
}

TriangleMesh build_unit_square_mesh(int n) {
    auto all = [](int, int) { return true; };
    auto slash = [](int, int) { return true; };
    TriangleMesh mesh = build_structured(DomainKind::UnitSquare, n, all, slash);
    recompute_boundary_flags(mesh);
    return mesh;
}

TriangleMesh build_initial_mesh(DomainKind domain) {
    constexpr double tau = 1.0 / 8.0;
    TriangleMesh mesh;
    switch (domain) {
        case DomainKind::UnitSquare:
            mesh = build_unit_square_mesh(4);
            break;
        case DomainKind::LShape: {
            auto keep = [](int i, int j) { return !(i == 1 && j == 0); };
            auto slash = [](int, int) { return true; };
            mesh = build_structured(domain, 2, keep, slash);
            mesh.corners.push_back({{0.5, 0.5}, 1.5 * kPi, 0.0, tau, 0.25});
            break;
        }
        case DomainKind::Slit: {
            auto all = [](int, int) { return true; };
            auto slash = [](int, int) { return true; };
            mesh = build_structured(domain, 2, all, slash);
            split_slit(mesh);
            mesh.corners.push_back({{0.5, 0.5}, 2.0 * kPi, 0.0, tau, 0.25});
            break;
        }
        case DomainKind::SquareRing: {
            auto keep = [](int i, int j) {
                return !(i >= 2 && i <= 3 && j >= 2 && j <= 3);
            };
            // Mirror diagonals across the hole center so the mesh has exact
            // 4-fold symmetry.
            auto slash = [](int i, int j) {
                const double cx = (i + 0.5) / 6.0 - 0.5;
                const double cy = (j + 0.5) / 6.0 - 0.5;
                return cx * cy > 0.0;
            };
            mesh = build_structured(domain, 6, keep, slash);
            const double R = 1.0 / 6.0;
            const double w = 1.5 * kPi;
            const double a = 1.0 / 3.0, b = 2.0 / 3.0;
            mesh.corners.push_back({{a, a}, w, 0.5 * kPi, tau, R});
            mesh.corners.push_back({{b, a}, w, kPi, tau, R});
            mesh.corners.push_back({{b, b}, w, 1.5 * kPi, tau, R});
            mesh.corners.push_back({{a, b}, w, 0.0, tau, R});
            break;
        }
    }
    recompute_boundary_flags(mesh);
    return mesh;
}

TriangleMesh refine_red(const TriangleMesh& mesh) {
    TriangleMesh fine;
    fine.domain = mesh.domain;
    fine.level = mesh.level + 1;
    fine.corners = mesh.corners;
    fine.vertices = mesh.vertices;  // parents keep their indices and coordinates
    fine.triangles.reserve(mesh.triangles.size() * 4);

    std::unordered_map<uint64_t, int> midpoint;
    midpoint.reserve(mesh.triangles.size() * 2);
    auto mid = [&](int a, int b) {
        const uint64_t key = edge_key(a, b);
        auto [it, inserted] = midpoint.try_emplace(key, fine.n_vertices());
        if (inserted) {
            fine.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        }
        return it->second;
    };

    for (const auto& t : mesh.triangles) {
        const int m01 = mid(t[0], t[1]);
        const int m12 = mid(t[1], t[2]);
        const int m20 = mid(t[2], t[0]);
        fine.triangles.push_back({t[0], m01, m20});
        fine.triangles.push_back({t[1], m12, m01});
        fine.triangles.push_back({t[2], m20, m12});
        fine.triangles.push_back({m01, m12, m20});
    }
    recompute_boundary_flags(fine);
    return fine;
}

DofMap interior_index(const TriangleMesh& mesh) {
    DofMap map;
    map.vertex_to_dof.assign(mesh.vertices.size(), -1);
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (!mesh.boundary_vertex[v]) {
            map.vertex_to_dof[v] = map.n_dofs++;
            map.dof_to_vertex.push_back(v);
        }
    }
    return map;
}

DofMap all_vertex_index(const TriangleMesh& mesh) {
    DofMap map;
    map.n_dofs = mesh.n_vertices();
    map.vertex_to_dof.resize(mesh.vertices.size());
    map.dof_to_vertex.resize(mesh.vertices.size());
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        map.vertex_to_dof[v] = v;
        map.dof_to_vertex[v] = v;
    }
    return map;
}

Polar local_polar(Vec2 point, const ReentrantCorner& corner, Vec2 hint) {
    constexpr double ang_tol = 1e-12;
    const Vec2 d = point - corner.origin;
    const double r = norm(d);
    if (r == 0.0) return {0.0, 0.0};

    double phi = std::atan2(d.y, d.x) - corner.frame_angle;
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;

    const bool full_turn = corner.omega >= 2.0 * kPi - 1e-9;
    if (full_turn) {
        if (phi <= ang_tol || phi >= 2.0 * kPi - ang_tol) {
            // On the cut: the evaluating triangle's centroid decides the side.
            const Vec2 ray{std::cos(corner.frame_angle), std::sin(corner.frame_angle)};
            const double side = cross(ray, hint - corner.origin);
            return {r, side >= 0.0 ? 0.0 : 2.0 * kPi};
        }
        return {r, phi};
    }

    if (phi <= corner.omega) return {r, phi};
    if (phi >= 2.0 * kPi - ang_tol) return {r, 0.0};
    if (phi - corner.omega <= ang_tol) return {r, corner.omega};
    throw std::logic_error("local_polar: angle outside corner sector (frame misconfigured)");
}

EdgeInfo edge_info(const TriangleMesh& mesh) {
    EdgeInfo info;
    for (const auto& [key, count] : edge_counts(mesh)) {
        (void)key;
        ++info.n_edges;
        if (count == 1) ++info.n_boundary_edges;
    }
    return info;
}

int euler_characteristic(const TriangleMesh& mesh) {
    return mesh.n_vertices() - edge_info(mesh).n_edges + mesh.n_triangles();
}

double total_area(const TriangleMesh& mesh) {
    double sum = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) sum += mesh.area(t);
    return sum;
}

double exact_domain_area(DomainKind d) {
    switch (d) {
        case DomainKind::UnitSquare: return 1.0;
        case DomainKind::LShape: return 0.75;
        case DomainKind::Slit: return 1.0;
        case DomainKind::SquareRing: return 8.0 / 9.0;
    }
    return 0.0;
}

double TriangleMesh::diameter(int t) const {
    const auto& tri = triangles[t];
    const double a = dist(vertices[tri[0]], vertices[tri[1]]);
    const double b = dist(vertices[tri[1]], vertices[tri[2]]);
    const double c = dist(vertices[tri[2]], vertices[tri[0]]);
    return std::max({a, b, c});
}

double TriangleMesh::mesh_size() const {
    double h = 0.0;
    for (int t = 0; t < n_triangles(); ++t) h = std::max(h, diameter(t));
    return h;
}

double min_angle(const TriangleMesh& mesh) {
    double amin = kPi;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const Vec2 p = mesh.vertices[t[k]];
            const Vec2 u = mesh.vertices[t[(k + 1) % 3]] - p;
            const Vec2 v = mesh.vertices[t[(k + 2) % 3]] - p;
            amin = std::min(amin, std::atan2(std::abs(cross(u, v)), dot(u, v)));
        }
    }
    return amin;
}

double shape_regularity(const TriangleMesh& mesh) {
    double worst = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double a = dist(mesh.vertices[tri[0]], mesh.vertices[tri[1]]);
        const double b = dist(mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
        const double c = dist(mesh.vertices[tri[2]], mesh.vertices[tri[0]]);
        const double area = mesh.area(t);
        if (area <= 0.0) throw std::runtime_error("degenerate triangle");
        const double inscribed = 4.0 * area / (a + b + c);  // 2 * inradius
        worst = std::max(worst, std::max({a, b, c}) / inscribed);
    }
    return worst;
}

void export_mesh(const TriangleMesh& mesh, std::ostream& os) {
    char line[128];
    std::snprintf(line, sizeof line, "%d %d %d\n", mesh.n_vertices(), mesh.n_triangles(),
                  mesh.level);
    os << line;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        std::snprintf(line, sizeof line, "%.17g %.17g %d\n", mesh.vertices[v].x,
                      mesh.vertices[v].y, static_cast<int>(mesh.boundary_vertex[v]));
        os << line;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(line, sizeof line, "%d %d %d\n", t[0], t[1], t[2]);
        os << line;
    }
}

}  // namespace biheig
