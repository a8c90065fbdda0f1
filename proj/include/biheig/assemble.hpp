#pragma once

#include <array>
#include <functional>

#include "biheig/mesh.hpp"
#include "biheig/quadrature.hpp"
#include "biheig/sparse.hpp"

namespace biheig {

/// P1 element stiffness of triangle t, K_ab = ∫ ∇φ_a·∇φ_b.
std::array<double, 9> local_stiffness(const TriangleMesh& mesh, int t);
/// P1 element mass of triangle t, M_ab = ∫ φ_a φ_b (exact closed form).
std::array<double, 9> local_mass(const TriangleMesh& mesh, int t);

/// Assemble ∫ ∇φ_i·∇φ_j over the dofs selected by `dofs`. Element-parallel;
/// contributions are merged in element order, so the result is bit-identical
/// for any thread count.
SymmetricSparse assemble_stiffness(const TriangleMesh& mesh, const DofMap& dofs);

/// Assemble ∫ φ_i φ_j likewise.
SymmetricSparse assemble_mass(const TriangleMesh& mesh, const DofMap& dofs);

/// Scalar field sampled per (triangle, physical point); the triangle index
/// carries the slit-side / corner-frame context.
using ScalarField = std::function<double(int tri, Vec2 p)>;

/// ∫_Ω f by the given rule, summed over triangles in index order.
double integrate(const TriangleMesh& mesh, const QuadratureRule& rule, const ScalarField& f);

/// Value of the P1 hat of local vertex a of triangle t at point p
/// (barycentric coordinate).
double p1_value(const TriangleMesh& mesh, int t, int a, Vec2 p);

}  // namespace biheig
