#include "biheig/operators.hpp"

#include <stdexcept>
#include <string>

#include "biheig/assemble.hpp"
#include "biheig/kernels.hpp"

namespace biheig {

const char* method_name(MethodKind m) {
    return m == MethodKind::Modified ? "modified" : "usual";
}

MethodKind method_from_name(const std::string& name) {
    if (name == "modified") return MethodKind::Modified;
    if (name == "usual") return MethodKind::Usual;
    throw std::invalid_argument("unknown method '" + name + "' (modified|usual)");
}

DiscreteOperator make_operator(const TriangleMesh& mesh, MethodKind method, double linear_tol) {
    DiscreteOperator op;
    op.dofs = interior_index(mesh);
    op.A = assemble_stiffness(mesh, op.dofs);
    op.M = assemble_mass(mesh, op.dofs);
    op.precond = std::make_unique<Ic0Preconditioner>(op.A);
    op.linear_tol = linear_tol;
    if (method == MethodKind::Modified) {
        op.correction =
            build_correction_system(mesh, op.dofs, op.A, op.M, *op.precond, linear_tol);
    }
    return op;
}

std::vector<double> apply_Th(const DiscreteOperator& op, const std::vector<double>& f,
                             std::vector<double>* rho_out) {
    CgOptions cg;
    cg.rel_tol = op.linear_tol;
    cg.max_iter = op.cg_max_iter;

    std::vector<double> rhs(static_cast<size_t>(op.n()));
    kernels::spmv(op.M, f, rhs);

    std::vector<double> rho;
    try {
        rho = solve_spd(op.A, *op.precond, rhs, cg);
    } catch (const SolverError& e) {
        throw SolverError(std::string("apply_Th: first Poisson solve failed: ") + e.what(),
                          e.achieved_residual);
    }

    kernels::spmv(op.M, rho, rhs);
    if (!op.correction.empty()) {
        const std::vector<double> c = correction_coeffs(op.correction, rho);
        for (int i = 0; i < op.correction.size(); ++i) {
            kernels::axpy(-c[static_cast<size_t>(i)],
                          op.correction.fields[static_cast<size_t>(i)].moment_b, rhs);
        }
    }

    std::vector<double> phi;
    try {
        phi = solve_spd(op.A, *op.precond, rhs, cg);
    } catch (const SolverError& e) {
        throw SolverError(std::string("apply_Th: second Poisson solve failed: ") + e.what(),
                          e.achieved_residual);
    }
    if (rho_out) *rho_out = std::move(rho);
    return phi;
}

}  // namespace biheig
