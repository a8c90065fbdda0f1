#pragma once

#include <vector>

namespace biheig {

/// Eigen-decomposition of a small symmetric matrix (row-major) by cyclic
/// Jacobi sweeps. On return `values` is ascending and column j of `vectors`
/// (row-major n x n) is the eigenvector of values[j], with a deterministic
/// sign convention. Intended for Rayleigh-Ritz blocks and Gram matrices,
/// n of order 10.
void jacobi_eigh(int n, std::vector<double> a, std::vector<double>& values,
                 std::vector<double>& vectors);

/// Solve SPD system a x = rhs by dense Cholesky (a row-major, copied).
/// Throws on a non-positive pivot.
std::vector<double> cholesky_solve(int n, std::vector<double> a, const std::vector<double>& rhs);

}  // namespace biheig
