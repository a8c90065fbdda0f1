#pragma once

#include <memory>
#include <vector>

#include "biheig/mesh.hpp"
#include "biheig/singular.hpp"
#include "biheig/solve.hpp"
#include "biheig/sparse.hpp"

namespace biheig {

enum class MethodKind { Modified, Usual };

const char* method_name(MethodKind m);
/// Accepts modified|usual; throws std::invalid_argument otherwise.
MethodKind method_from_name(const std::string& name);

/// Discrete solution operator T_h of the mixed eigenproblem: two Poisson
/// solves per application, with the singular correction subtracted between
/// them. An empty correction gives the plain mixed method.
struct DiscreteOperator {
    DofMap dofs;
    SymmetricSparse A;  // stiffness on interior dofs
    SymmetricSparse M;  // mass on interior dofs
    std::unique_ptr<Ic0Preconditioner> precond;
    CorrectionSystem correction;
    double linear_tol = 1e-10;
    int cg_max_iter = 20000;

    int n() const { return A.n; }
};

DiscreteOperator make_operator(const TriangleMesh& mesh, MethodKind method,
                               double linear_tol = 1e-10);

/// φ = S_h(ρ − Σ_i c_i(ρ) ξ_i) with ρ = S_h(M f). Optionally returns ρ.
/// Solver failures are rethrown with the failing stage named.
std::vector<double> apply_Th(const DiscreteOperator& op, const std::vector<double>& f,
                             std::vector<double>* rho_out = nullptr);

}  // namespace biheig
