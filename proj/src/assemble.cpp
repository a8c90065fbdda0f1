#include "biheig/assemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace biheig {

namespace {

/// CSR pattern from vertex adjacency restricted to the selected dofs.
SymmetricSparse make_pattern(const TriangleMesh& mesh, const DofMap& dofs) {
    const int n = dofs.n_dofs;
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int d = 0; d < n; ++d) adj[static_cast<size_t>(d)].push_back(d);
    for (const auto& t : mesh.triangles) {
        for (int a = 0; a < 3; ++a) {
            const int da = dofs.vertex_to_dof[t[a]];
            if (da < 0) continue;
            for (int b = 0; b < 3; ++b) {
                const int db = dofs.vertex_to_dof[t[b]];
                if (db < 0 || db == da) continue;
                adj[static_cast<size_t>(da)].push_back(db);
            }
        }
    }
    SymmetricSparse m;
    m.n = n;
    m.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto& row = adj[static_cast<size_t>(i)];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        m.row_ptr[static_cast<size_t>(i) + 1] =
            m.row_ptr[static_cast<size_t>(i)] + static_cast<int>(row.size());
    }
    m.col.reserve(static_cast<size_t>(m.row_ptr[static_cast<size_t>(n)]));
    for (int i = 0; i < n; ++i) {
        for (int c : adj[static_cast<size_t>(i)]) m.col.push_back(c);
    }
    m.val.assign(m.col.size(), 0.0);
    return m;
}

void add_entry(SymmetricSparse& m, int i, int j, double v) {
    const auto begin = m.col.begin() + m.row_ptr[static_cast<size_t>(i)];
    const auto end = m.col.begin() + m.row_ptr[static_cast<size_t>(i) + 1];
    const auto it = std::lower_bound(begin, end, j);
    m.val[static_cast<size_t>(it - m.col.begin())] += v;
}

template <typename LocalFn>
SymmetricSparse assemble(const TriangleMesh& mesh, const DofMap& dofs, LocalFn local) {
    SymmetricSparse m = make_pattern(mesh, dofs);
    const int nt = mesh.n_triangles();
    std::vector<std::array<double, 9>> elem(static_cast<size_t>(nt));
#pragma omp parallel for schedule(static)
    for (int t = 0; t < nt; ++t) elem[static_cast<size_t>(t)] = local(mesh, t);
    // Serial merge in element order keeps the accumulation deterministic.
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a) {
            const int da = dofs.vertex_to_dof[tri[a]];
            if (da < 0) continue;
            for (int b = 0; b < 3; ++b) {
                const int db = dofs.vertex_to_dof[tri[b]];
                if (db < 0) continue;
                add_entry(m, da, db, elem[static_cast<size_t>(t)][static_cast<size_t>(3 * a + b)]);
            }
        }
    }
    return m;
}

}  // namespace

std::array<double, 9> local_stiffness(const TriangleMesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Vec2 p0 = mesh.vertices[tri[0]];
    const Vec2 p1 = mesh.vertices[tri[1]];
    const Vec2 p2 = mesh.vertices[tri[2]];
    const double area = signed_area(p0, p1, p2);
    if (area <= 0.0) throw std::runtime_error("local_stiffness: degenerate triangle");
    // Constant P1 gradients: ∇φ_a = (b_a, c_a)/(2|K|).
    const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    std::array<double, 9> k{};
    for (int a = 0; a < 3; ++a) {
        for (int bb = 0; bb < 3; ++bb) {
            k[static_cast<size_t>(3 * a + bb)] = (b[a] * b[bb] + c[a] * c[bb]) / (4.0 * area);
        }
    }
    return k;
}

std::array<double, 9> local_mass(const TriangleMesh& mesh, int t) {
    const double area = mesh.area(t);
    if (area <= 0.0) throw std::runtime_error("local_mass: degenerate triangle");
    const double off = area / 12.0;
    const double diag = area / 6.0;
    return {diag, off, off, off, diag, off, off, off, diag};
}

SymmetricSparse assemble_stiffness(const TriangleMesh& mesh, const DofMap& dofs) {
    return assemble(mesh, dofs, [](const TriangleMesh& m, int t) { return local_stiffness(m, t); });
}

SymmetricSparse assemble_mass(const TriangleMesh& mesh, const DofMap& dofs) {
    return assemble(mesh, dofs, [](const TriangleMesh& m, int t) { return local_mass(m, t); });
}

double integrate(const TriangleMesh& mesh, const QuadratureRule& rule, const ScalarField& f) {
    const int nt = mesh.n_triangles();
    std::vector<double> partial(static_cast<size_t>(nt));
#pragma omp parallel for schedule(static)
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 a = mesh.vertices[tri[0]];
        const Vec2 b = mesh.vertices[tri[1]];
        const Vec2 c = mesh.vertices[tri[2]];
        const double area = mesh.area(t);
        double s = 0.0;
        for (const auto& q : rule.points) {
            s += q.weight * f(t, barycentric_point(a, b, c, q.bary));
        }
        partial[static_cast<size_t>(t)] = area * s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double p1_value(const TriangleMesh& mesh, int t, int a, Vec2 p) {
    const auto& tri = mesh.triangles[t];
    const Vec2 pa = mesh.vertices[tri[a]];
    const Vec2 pb = mesh.vertices[tri[(a + 1) % 3]];
    const Vec2 pc = mesh.vertices[tri[(a + 2) % 3]];
    return signed_area(p, pb, pc) / signed_area(pa, pb, pc);
}

}  // namespace biheig
