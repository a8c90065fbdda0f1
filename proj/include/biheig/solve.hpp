#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "biheig/sparse.hpp"

namespace biheig {

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), achieved_residual(residual) {}
    double achieved_residual;
};

/// Zero-fill incomplete Cholesky A ≈ L Lᵀ with the lower-triangle pattern
/// of A. Construction shifts the diagonal and retries on pivot breakdown.
class Ic0Preconditioner {
  public:
    explicit Ic0Preconditioner(const SymmetricSparse& A);

    /// z = (L Lᵀ)⁻¹ r
    void apply(const std::vector<double>& r, std::vector<double>& z) const;

    int n() const { return lower_.n; }

  private:
    SymmetricSparse lower_;  // L in CSR
    SymmetricSparse upper_;  // Lᵀ in CSR, for the backward sweep
};

struct CgOptions {
    double rel_tol = 1e-10;
    int max_iter = 20000;
};

struct CgStats {
    int iterations = 0;
    double rel_residual = 0.0;
};

/// Preconditioned conjugate gradients for SPD A, x0 = 0. Returns x with
/// ‖Ax−b‖₂/‖b‖₂ ≤ rel_tol (verified on the true residual); throws
/// SolverError if the iteration cap is reached first. Deterministic for
/// any thread count.
std::vector<double> solve_spd(const SymmetricSparse& A, const Ic0Preconditioner& precond,
                              const std::vector<double>& rhs, const CgOptions& opts = {},
                              CgStats* stats = nullptr);

/// Convenience overload that builds the preconditioner on the fly.
std::vector<double> solve_spd(const SymmetricSparse& A, const std::vector<double>& rhs,
                              const CgOptions& opts = {}, CgStats* stats = nullptr);

}  // namespace biheig
