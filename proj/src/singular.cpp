#include "biheig/singular.hpp"

#include <cmath>
#include <stdexcept>

#include "biheig/assemble.hpp"
#include "biheig/kernels.hpp"
#include "biheig/quadrature.hpp"
#include "biheig/smalldense.hpp"

namespace biheig {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Geometric-grading depth for triangles touching a corner. The untreated
// tip cell contributes O((2^-d R)^{2-2α}); d = 40 keeps that below 1e-8
// relative even for α = 2/3 while leaving the tip-cell quadrature points
// representable away from the corner (offsets ~1e-14 vs ulp ~1e-16).
constexpr int kGradeDepth = 40;

double cutoff_t(double r, double tau, double R) {
    return 2.0 * r / (R * (1.0 - tau)) - (1.0 + tau) / (1.0 - tau);
}

using PointSink = std::function<void(Vec2, double)>;

void rule_on_cell(Vec2 a, Vec2 b, Vec2 c, const QuadratureRule& rule, const PointSink& sink) {
    const double area = signed_area(a, b, c);
    for (const auto& q : rule.points) {
        sink(barycentric_point(a, b, c, q.bary), q.weight * area);
    }
}

double cell_corner_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 q) {
    return std::min({point_segment_dist(q, a, b), point_segment_dist(q, b, c),
                     point_segment_dist(q, c, a)});
}

/// Distance-adaptive subdivision for r^{-α}-type integrands: split any cell
/// closer to the corner than 8x its own diameter. Cells halve while their
/// distance stays put, so the recursion bottoms out geometrically.
void subdivide_by_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 q, int depth, const QuadratureRule& rule,
                           const PointSink& sink) {
    const double diam = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (depth == 0 || cell_corner_dist(a, b, c, q) >= 8.0 * diam) {
        rule_on_cell(a, b, c, rule, sink);
        return;
    }
    const Vec2 mab = 0.5 * (a + b);
    const Vec2 mbc = 0.5 * (b + c);
    const Vec2 mca = 0.5 * (c + a);
    subdivide_by_distance(a, mab, mca, q, depth - 1, rule, sink);
    subdivide_by_distance(b, mbc, mab, q, depth - 1, rule, sink);
    subdivide_by_distance(c, mca, mbc, q, depth - 1, rule, sink);
    subdivide_by_distance(mab, mbc, mca, q, depth - 1, rule, sink);
}

/// Triangle (q, a, b) with the singular corner at q: peel similar strips
/// toward q. Each strip cell still sits at a distance comparable to its own
/// size, so it gets the distance-adaptive cascade; the grading alone would
/// leave every strip with the same relative rule error. The tip cell
/// evaluates points as offsets from q so rounding cannot collapse them onto
/// the corner itself.
void subdivide_graded(Vec2 q, Vec2 a, Vec2 b, const QuadratureRule& rule, const PointSink& sink) {
    for (int d = 0; d < kGradeDepth; ++d) {
        const Vec2 a2 = 0.5 * (q + a);
        const Vec2 b2 = 0.5 * (q + b);
        const Vec2 m = 0.5 * (a + b);
        subdivide_by_distance(a, m, a2, q, 8, rule, sink);
        subdivide_by_distance(b, b2, m, q, 8, rule, sink);
        subdivide_by_distance(a2, m, b2, q, 8, rule, sink);
        a = a2;
        b = b2;
    }
    const double area = signed_area(q, a, b);
    const Vec2 ea = a - q;
    const Vec2 eb = b - q;
    for (const auto& pt : rule.points) {
        const Vec2 p = q + pt.bary[1] * ea + pt.bary[2] * eb;
        sink(p, pt.weight * area);
    }
}

double min_corner_distance(const TriangleMesh& mesh, int t, Vec2 q) {
    const auto& tri = mesh.triangles[t];
    double d = point_segment_dist(q, mesh.vertices[tri[0]], mesh.vertices[tri[1]]);
    d = std::min(d, point_segment_dist(q, mesh.vertices[tri[1]], mesh.vertices[tri[2]]));
    d = std::min(d, point_segment_dist(q, mesh.vertices[tri[2]], mesh.vertices[tri[0]]));
    return d;
}

int touching_vertex(const TriangleMesh& mesh, int t, Vec2 q) {
    const auto& tri = mesh.triangles[t];
    for (int a = 0; a < 3; ++a) {
        if (dist(mesh.vertices[tri[a]], q) < 1e-13) return a;
    }
    return -1;
}

/// Enumerate quadrature points of triangle t for integrands supported in
/// the corner's cutoff disk. Returns false when the triangle cannot meet
/// the disk.
bool corner_quadrature(const TriangleMesh& mesh, int t, const ReentrantCorner& corner,
                       const PointSink& sink) {
    const Vec2 q = corner.origin;
    const double dist = min_corner_distance(mesh, t, q);
    if (dist >= corner.radius) return false;

    const QuadratureRule& rule = triangle_rule(6);
    const auto& tri = mesh.triangles[t];
    const Vec2 a = mesh.vertices[tri[0]];
    const Vec2 b = mesh.vertices[tri[1]];
    const Vec2 c = mesh.vertices[tri[2]];

    const int at = touching_vertex(mesh, t, q);
    if (at >= 0) {
        const Vec2 u = mesh.vertices[tri[(at + 1) % 3]];
        const Vec2 v = mesh.vertices[tri[(at + 2) % 3]];
        subdivide_graded(q, u, v, rule, sink);
        return true;
    }
    subdivide_by_distance(a, b, c, q, 12, rule, sink);
    return true;
}

}  // namespace

double cutoff_chi(double r, double tau, double R) {
    if (r >= R) return 0.0;
    if (r <= tau * R) return 1.0;
    const double t = cutoff_t(r, tau, R);
    return 0.5 - (15.0 / 16.0) * t + (5.0 / 8.0) * t * t * t - (3.0 / 16.0) * t * t * t * t * t;
}

double cutoff_chi_prime(double r, double tau, double R) {
    if (r >= R || r <= tau * R) return 0.0;
    const double t = cutoff_t(r, tau, R);
    const double one_m_t2 = 1.0 - t * t;
    const double dchi_dt = -(15.0 / 16.0) * one_m_t2 * one_m_t2;
    return dchi_dt * 2.0 / (R * (1.0 - tau));
}

double cutoff_chi_double_prime(double r, double tau, double R) {
    if (r >= R || r <= tau * R) return 0.0;
    const double t = cutoff_t(r, tau, R);
    const double d2chi_dt2 = (15.0 / 4.0) * t * (1.0 - t * t);
    const double s = 2.0 / (R * (1.0 - tau));
    return d2chi_dt2 * s * s;
}

double s_minus(Vec2 p, const ReentrantCorner& corner, Vec2 hint) {
    // Outside the cutoff disk the field is identically zero; the sector-angle
    // machinery only applies inside, where the disk is contained in the domain.
    if (dist(p, corner.origin) >= corner.radius) return 0.0;
    const Polar pol = local_polar(p, corner, hint);
    if (pol.r == 0.0) throw std::invalid_argument("s_minus: evaluation at the corner point");
    const double alpha = kPi / corner.omega;
    return cutoff_chi(pol.r, corner.tau, corner.radius) * std::pow(pol.r, -alpha) *
           std::sin(alpha * pol.theta);
}

double laplacian_s_minus(Vec2 p, const ReentrantCorner& corner, Vec2 hint) {
    const double r = dist(p, corner.origin);
    if (r >= corner.radius) return 0.0;
    if (r == 0.0) throw std::invalid_argument("laplacian_s_minus: evaluation at the corner");
    if (r <= corner.tau * corner.radius) return 0.0;
    const Polar pol = local_polar(p, corner, hint);
    const double alpha = kPi / corner.omega;
    const double chi_p = cutoff_chi_prime(pol.r, corner.tau, corner.radius);
    const double chi_pp = cutoff_chi_double_prime(pol.r, corner.tau, corner.radius);
    return (chi_pp + (1.0 - 2.0 * alpha) * chi_p / pol.r) * std::pow(pol.r, -alpha) *
           std::sin(alpha * pol.theta);
}

std::vector<double> solve_zeta(const TriangleMesh& mesh, const DofMap& dofs,
                               const SymmetricSparse& A, const Ic0Preconditioner& precond,
                               const ReentrantCorner& corner, double linear_tol) {
    const int nt = mesh.n_triangles();
    // Per-triangle hat contributions, merged in element order.
    std::vector<std::array<double, 3>> local(static_cast<size_t>(nt), {0.0, 0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 16)
    for (int t = 0; t < nt; ++t) {
        const Vec2 hint = mesh.centroid(t);
        // Δs⁻ lives on the annulus; skip triangles inside the inner plateau.
        const auto& tri = mesh.triangles[t];
        bool all_inside = true;
        for (int a = 0; a < 3; ++a) {
            if (dist(mesh.vertices[tri[a]], corner.origin) > corner.tau * corner.radius) {
                all_inside = false;
                break;
            }
        }
        if (all_inside) continue;
        auto& acc = local[static_cast<size_t>(t)];
        corner_quadrature(mesh, t, corner, [&](Vec2 p, double w) {
            const double v = laplacian_s_minus(p, corner, hint);
            if (v == 0.0) return;
            for (int a = 0; a < 3; ++a) acc[static_cast<size_t>(a)] += w * v * p1_value(mesh, t, a, p);
        });
    }
    std::vector<double> load(static_cast<size_t>(dofs.n_dofs), 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a) {
            const int d = dofs.vertex_to_dof[tri[a]];
            if (d >= 0) load[static_cast<size_t>(d)] += local[static_cast<size_t>(t)][static_cast<size_t>(a)];
        }
    }
    CgOptions opts;
    opts.rel_tol = linear_tol;
    return solve_spd(A, precond, load, opts);
}

double integrate_corner_region(const TriangleMesh& mesh, const ReentrantCorner& corner,
                               const std::function<double(int, Vec2)>& f) {
    const int nt = mesh.n_triangles();
    std::vector<double> partial(static_cast<size_t>(nt), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (int t = 0; t < nt; ++t) {
        double s = 0.0;
        corner_quadrature(mesh, t, corner, [&](Vec2 p, double w) { s += w * f(t, p); });
        partial[static_cast<size_t>(t)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

std::vector<double> corner_moment_vector(const TriangleMesh& mesh, const DofMap& dofs,
                                         const ReentrantCorner& corner,
                                         const std::function<double(int, Vec2)>& f) {
    const int nt = mesh.n_triangles();
    std::vector<std::array<double, 3>> local(static_cast<size_t>(nt), {0.0, 0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 16)
    for (int t = 0; t < nt; ++t) {
        auto& acc = local[static_cast<size_t>(t)];
        corner_quadrature(mesh, t, corner, [&](Vec2 p, double w) {
            const double v = f(t, p);
            if (v == 0.0) return;
            for (int a = 0; a < 3; ++a) acc[static_cast<size_t>(a)] += w * v * p1_value(mesh, t, a, p);
        });
    }
    std::vector<double> moments(static_cast<size_t>(dofs.n_dofs), 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a) {
            const int d = dofs.vertex_to_dof[tri[a]];
            if (d >= 0) {
                moments[static_cast<size_t>(d)] += local[static_cast<size_t>(t)][static_cast<size_t>(a)];
            }
        }
    }
    return moments;
}

CorrectionSystem build_correction_system(const TriangleMesh& mesh, const DofMap& dofs,
                                         const SymmetricSparse& A, const SymmetricSparse& M,
                                         const Ic0Preconditioner& precond, double linear_tol) {
    CorrectionSystem sys;
    const int nc = static_cast<int>(mesh.corners.size());
    if (nc == 0) return sys;

    const size_t n = static_cast<size_t>(dofs.n_dofs);
    std::vector<std::vector<double>> ms(static_cast<size_t>(nc));      // (φ_i, s⁻_c)
    std::vector<std::vector<double>> mzeta(static_cast<size_t>(nc));   // M ζ_c
    std::vector<double> s_norm(static_cast<size_t>(nc));               // (s⁻_c, s⁻_c)

    for (int c = 0; c < nc; ++c) {
        const ReentrantCorner& corner = mesh.corners[static_cast<size_t>(c)];
        SingularField field;
        field.corner = corner;
        field.alpha = kPi / corner.omega;
        field.zeta = solve_zeta(mesh, dofs, A, precond, corner, linear_tol);

        auto s_of = [&](int t, Vec2 p) { return s_minus(p, corner, mesh.centroid(t)); };
        ms[static_cast<size_t>(c)] = corner_moment_vector(mesh, dofs, corner, s_of);
        s_norm[static_cast<size_t>(c)] = integrate_corner_region(
            mesh, corner, [&](int t, Vec2 p) { const double v = s_of(t, p); return v * v; });

        mzeta[static_cast<size_t>(c)].resize(n);
        kernels::spmv(M, field.zeta, mzeta[static_cast<size_t>(c)]);

        field.moment_b.resize(n);
        for (size_t i = 0; i < n; ++i) {
            field.moment_b[i] = mzeta[static_cast<size_t>(c)][i] + ms[static_cast<size_t>(c)][i];
        }
        field.norm_sq = kernels::dot(field.zeta, mzeta[static_cast<size_t>(c)]) +
                        2.0 * kernels::dot(field.zeta, ms[static_cast<size_t>(c)]) +
                        s_norm[static_cast<size_t>(c)];
        if (!(field.norm_sq > 0.0)) {
            throw std::runtime_error("build_correction_system: nonpositive corrector norm");
        }
        sys.fields.push_back(std::move(field));
    }

    sys.gram.assign(static_cast<size_t>(nc) * static_cast<size_t>(nc), 0.0);
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j <= i; ++j) {
            double g;
            if (i == j) {
                g = sys.fields[static_cast<size_t>(i)].norm_sq;
            } else {
                const ReentrantCorner& ci = mesh.corners[static_cast<size_t>(i)];
                const ReentrantCorner& cj = mesh.corners[static_cast<size_t>(j)];
                // (ξ_i, ξ_j) = ζ_iᵀMζ_j + ζ_iᵀ(φ,s_j) + ζ_jᵀ(φ,s_i) + (s_i, s_j).
                double s_cross = 0.0;
                if (dist(ci.origin, cj.origin) < ci.radius + cj.radius) {
                    s_cross = integrate_corner_region(mesh, ci, [&](int t, Vec2 p) {
                        const double si = s_minus(p, ci, mesh.centroid(t));
                        if (si == 0.0) return 0.0;
                        return si * s_minus(p, cj, mesh.centroid(t));
                    });
                }
                g = kernels::dot(sys.fields[static_cast<size_t>(i)].zeta, mzeta[static_cast<size_t>(j)]) +
                    kernels::dot(sys.fields[static_cast<size_t>(i)].zeta, ms[static_cast<size_t>(j)]) +
                    kernels::dot(sys.fields[static_cast<size_t>(j)].zeta, ms[static_cast<size_t>(i)]) +
                    s_cross;
            }
            sys.gram[static_cast<size_t>(i * nc + j)] = g;
            sys.gram[static_cast<size_t>(j * nc + i)] = g;
        }
    }

    std::vector<double> eigval, eigvec;
    jacobi_eigh(nc, sys.gram, eigval, eigvec);
    if (eigval.front() <= 0.0) {
        throw std::runtime_error(
            "build_correction_system: Gram matrix not positive definite "
            "(overlapping cutoffs or misconfigured frames)");
    }
    return sys;
}

std::vector<double> correction_coeffs(const CorrectionSystem& system,
                                      const std::vector<double>& w) {
    const int nc = system.size();
    if (nc == 0) return {};
    std::vector<double> rhs(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) {
        rhs[static_cast<size_t>(i)] = kernels::dot(w, system.fields[static_cast<size_t>(i)].moment_b);
    }
    if (nc == 1) return {rhs[0] / system.fields[0].norm_sq};
    return cholesky_solve(nc, system.gram, rhs);
}

}  // namespace biheig
