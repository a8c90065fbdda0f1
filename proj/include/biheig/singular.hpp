#pragma once

#include <functional>
#include <vector>

#include "biheig/mesh.hpp"
#include "biheig/solve.hpp"
#include "biheig/sparse.hpp"

namespace biheig {

/// Quintic cutoff: 1 for r ≤ τR, 0 for r ≥ R, and in between
/// 1/2 − (15/16)t + (5/8)t³ − (3/16)t⁵ with t = 2r/(R(1−τ)) − (1+τ)/(1−τ).
/// C² across both seams.
double cutoff_chi(double r, double tau, double R);
double cutoff_chi_prime(double r, double tau, double R);
double cutoff_chi_double_prime(double r, double tau, double R);

/// Dual singular part s⁻ = χ(r)·r^{−α}·sin(αθ), α = π/ω, in the corner's
/// local frame. Vanishes identically for r ≥ R. `hint` is the evaluating
/// triangle's centroid (slit-side disambiguation). Throws for r = 0.
double s_minus(Vec2 p, const ReentrantCorner& corner, Vec2 hint);

/// Δs⁻ = (χ″ + (1−2α)χ′/r)·r^{−α}·sin(αθ); exactly zero for r < τR and
/// r > R since r^{−α}sin(αθ) is harmonic.
double laplacian_s_minus(Vec2 p, const ReentrantCorner& corner, Vec2 hint);

/// Corrector field ξ_h = s⁻ + ζ_h for one corner: analytic descriptor plus
/// FE lift, its moments against the interior hats, and its L² norm.
struct SingularField {
    ReentrantCorner corner;
    double alpha = 0.0;
    std::vector<double> zeta;      // ζ_h coefficients on interior dofs
    std::vector<double> moment_b;  // b_i = (φ_i, ξ_h)
    double norm_sq = 0.0;          // (ξ_h, ξ_h)
};

/// All corners of a mesh plus the Gram matrix (ξ_i, ξ_j); empty on convex
/// domains (and when running the plain mixed method).
struct CorrectionSystem {
    std::vector<SingularField> fields;
    std::vector<double> gram;  // N_c x N_c row-major

    int size() const { return static_cast<int>(fields.size()); }
    bool empty() const { return fields.empty(); }
};

/// FE lift: b(ζ_h, v_h) = (Δs⁻, v_h) for all interior hats.
std::vector<double> solve_zeta(const TriangleMesh& mesh, const DofMap& dofs,
                               const SymmetricSparse& A, const Ic0Preconditioner& precond,
                               const ReentrantCorner& corner, double linear_tol);

CorrectionSystem build_correction_system(const TriangleMesh& mesh, const DofMap& dofs,
                                         const SymmetricSparse& A, const SymmetricSparse& M,
                                         const Ic0Preconditioner& precond, double linear_tol);

/// Correction coefficients: solves Σ_j (ξ_i,ξ_j) c_j = (w, ξ_i) with
/// (w, ξ_i) = wᵀ·moment_b_i. Returns {} for an empty system.
std::vector<double> correction_coeffs(const CorrectionSystem& system,
                                      const std::vector<double>& w);

/// Quadrature over the triangles meeting the corner's cutoff disk, suited to
/// the r^{−α} integrands: triangles touching the corner are subdivided
/// geometrically toward it, nearby ones are uniformly subdivided by
/// proximity. `f` is evaluated as f(tri, point). Exposed for tests.
double integrate_corner_region(const TriangleMesh& mesh, const ReentrantCorner& corner,
                               const std::function<double(int, Vec2)>& f);

/// ∫ φ_i·f over the corner disk for every interior dof i, same grading.
std::vector<double> corner_moment_vector(const TriangleMesh& mesh, const DofMap& dofs,
                                         const ReentrantCorner& corner,
                                         const std::function<double(int, Vec2)>& f);

}  // namespace biheig
