#pragma once

#include <cstdint>
#include <vector>

#include "biheig/operators.hpp"

namespace biheig {

struct EigenOptions {
    int k = 6;
    double tol = 1e-8;  // residual tolerance
    int block_extra = 4;
    int max_iter = 500;
    double lambda_change_tol = 1e-10;
    uint64_t seed = 0;
};

struct EigenResult {
    std::vector<double> lambdas;  // ascending, size k, all > 0
    std::vector<std::vector<double>> u_vectors;      // M-orthonormal
    std::vector<std::vector<double>> sigma_vectors;  // σ_i = S_h(λ_i u_i)
    std::vector<double> residuals;
    int iterations = 0;
    bool degenerate_at_k = false;  // λ_k vs λ_{k+1} relative gap < 1e-12
};

/// Smallest k eigenpairs by block subspace iteration on T_h with
/// Rayleigh-Ritz in the M-inner product. Each iteration applies T_h to a
/// block of k + block_extra vectors (two Poisson solves per vector).
/// Deterministic given the seed. Throws SolverError when the iteration cap
/// is reached, carrying the best residual attained.
EigenResult eigs_smallest(const DiscreteOperator& op, const EigenOptions& opts);

/// ‖Aσ_i − λ_i M u_i‖ / (λ_i ‖M u_i‖), recomputed from the stored vectors.
std::vector<double> residual_norms(const DiscreteOperator& op, const EigenResult& result);

/// Deterministic pseudo-random block in [−1, 1), mt19937_64 stream mapped
/// explicitly so the values are platform-independent.
std::vector<std::vector<double>> random_block(int n, int p, uint64_t seed);

/// In-place M-orthonormalization (modified Gram-Schmidt, two passes).
void m_orthonormalize(const SymmetricSparse& M, std::vector<std::vector<double>>& block);

}  // namespace biheig
