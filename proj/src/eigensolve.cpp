#include "biheig/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "biheig/kernels.hpp"
#include "biheig/smalldense.hpp"

namespace biheig {

namespace k = kernels;

std::vector<std::vector<double>> random_block(int n, int p, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<double>> block(static_cast<size_t>(p));
    for (auto& v : block) {
        v.resize(static_cast<size_t>(n));
        for (double& x : v) {
            x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
        }
    }
    return block;
}

void m_orthonormalize(const SymmetricSparse& M, std::vector<std::vector<double>>& block) {
    const int p = static_cast<int>(block.size());
    const size_t n = block.empty() ? 0 : block[0].size();
    std::vector<std::vector<double>> mcol(static_cast<size_t>(p));
    std::vector<double> mw(n);
    for (int j = 0; j < p; ++j) {
        auto& w = block[static_cast<size_t>(j)];
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                const double c = k::dot(mcol[static_cast<size_t>(i)], w);
                k::axpy(-c, block[static_cast<size_t>(i)], w);
            }
        }
        k::spmv(M, w, mw);
        const double nrm = std::sqrt(k::dot(w, mw));
        if (!(nrm > 0.0)) {
            throw SolverError("m_orthonormalize: block became rank deficient", 0.0);
        }
        k::scale(1.0 / nrm, w);
        mcol[static_cast<size_t>(j)] = mw;
        k::scale(1.0 / nrm, mcol[static_cast<size_t>(j)]);
    }
}

namespace {

/// Ritz extraction from H = VᵀM(T_h V): (ascending λ, rotation Y with
/// columns ordered to match).
struct RitzData {
    std::vector<double> lambdas;  // ascending, size p
    std::vector<double> rotation;  // p x p row-major, column j pairs with lambdas[j]
};

RitzData rayleigh_ritz(std::vector<double> H, int p) {
    // Symmetrize against solver-tolerance asymmetry.
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < i; ++j) {
            const double s = 0.5 * (H[static_cast<size_t>(i * p + j)] + H[static_cast<size_t>(j * p + i)]);
            H[static_cast<size_t>(i * p + j)] = s;
            H[static_cast<size_t>(j * p + i)] = s;
        }
    }
    std::vector<double> mu, Y;
    jacobi_eigh(p, std::move(H), mu, Y);  // mu ascending
    RitzData out;
    out.lambdas.resize(static_cast<size_t>(p));
    out.rotation.assign(static_cast<size_t>(p) * static_cast<size_t>(p), 0.0);
    // Largest mu of T_h are the smallest λ = 1/mu; reverse the order.
    for (int j = 0; j < p; ++j) {
        const int src = p - 1 - j;
        const double m = mu[static_cast<size_t>(src)];
        if (!(m > 0.0)) {
            throw SolverError("rayleigh_ritz: nonpositive Ritz value of T_h", 0.0);
        }
        out.lambdas[static_cast<size_t>(j)] = 1.0 / m;
        for (int i = 0; i < p; ++i) {
            out.rotation[static_cast<size_t>(i * p + j)] = Y[static_cast<size_t>(i * p + src)];
        }
    }
    return out;
}

std::vector<std::vector<double>> rotate_block(const std::vector<std::vector<double>>& block,
                                              const std::vector<double>& Y, int p) {
    const size_t n = block[0].size();
    std::vector<std::vector<double>> out(static_cast<size_t>(p));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < p; ++j) {
        auto& col = out[static_cast<size_t>(j)];
        col.assign(n, 0.0);
        for (int i = 0; i < p; ++i) {
            const double y = Y[static_cast<size_t>(i * p + j)];
            const auto& src = block[static_cast<size_t>(i)];
            for (size_t r = 0; r < n; ++r) col[r] += y * src[r];
        }
    }
    return out;
}

}  // namespace

EigenResult eigs_smallest(const DiscreteOperator& op, const EigenOptions& opts) {
    const int n = op.n();
    const int kk = opts.k;
    const int p = kk + opts.block_extra;
    if (kk < 1) throw std::invalid_argument("eigs_smallest: k must be >= 1");
    if (p > n) throw std::invalid_argument("eigs_smallest: block exceeds problem size");

    auto V = random_block(n, p, opts.seed);
    m_orthonormalize(op.M, V);

    std::vector<std::vector<double>> W(static_cast<size_t>(p));
    std::vector<std::vector<double>> P(static_cast<size_t>(p));  // ρ = A⁻¹MV, cached
    std::vector<double> lambda_prev;
    std::vector<double> mv(static_cast<size_t>(n));
    RitzData ritz;
    double best_change = 1e300;
    int it = 0;
    bool converged = false;

    while (it < opts.max_iter) {
        ++it;
#pragma omp parallel for schedule(dynamic, 1)
        for (int j = 0; j < p; ++j) {
            W[static_cast<size_t>(j)] =
                apply_Th(op, V[static_cast<size_t>(j)], &P[static_cast<size_t>(j)]);
        }

        std::vector<double> H(static_cast<size_t>(p) * static_cast<size_t>(p));
        for (int i = 0; i < p; ++i) {
            k::spmv(op.M, V[static_cast<size_t>(i)], mv);
            for (int j = 0; j < p; ++j) {
                H[static_cast<size_t>(i * p + j)] = k::dot(mv, W[static_cast<size_t>(j)]);
            }
        }
        ritz = rayleigh_ritz(std::move(H), p);

        if (!lambda_prev.empty()) {
            double change = 0.0;
            for (int i = 0; i < kk; ++i) {
                change = std::max(change,
                                  std::abs(ritz.lambdas[static_cast<size_t>(i)] -
                                           lambda_prev[static_cast<size_t>(i)]) /
                                      ritz.lambdas[static_cast<size_t>(i)]);
            }
            best_change = std::min(best_change, change);
            if (change < opts.lambda_change_tol) {
                // Confirm the residuals before accepting: σ_i from the cached
                // first-stage solves, u_i from the current basis.
                auto U = rotate_block(V, ritz.rotation, p);
                auto S = rotate_block(P, ritz.rotation, p);
                bool ok = true;
                std::vector<double> as(static_cast<size_t>(n));
                for (int i = 0; i < kk && ok; ++i) {
                    const double lam = ritz.lambdas[static_cast<size_t>(i)];
                    k::spmv(op.A, S[static_cast<size_t>(i)], as);   // A(ρ_i)
                    k::spmv(op.M, U[static_cast<size_t>(i)], mv);   // M u_i
                    double num = 0.0;
                    for (int r = 0; r < n; ++r) {
                        const double d = lam * as[static_cast<size_t>(r)] -
                                         lam * mv[static_cast<size_t>(r)];
                        num += d * d;
                    }
                    const double den = lam * k::norm2(mv);
                    ok = std::sqrt(num) <= opts.tol * den;
                }
                if (ok) {
                    V = std::move(U);
                    converged = true;
                    break;
                }
            }
        }
        lambda_prev = ritz.lambdas;

        auto Wrot = rotate_block(W, ritz.rotation, p);
        m_orthonormalize(op.M, Wrot);
        V = std::move(Wrot);
    }

    if (!converged) {
        throw SolverError("eigs_smallest: iteration cap reached", best_change);
    }

    EigenResult result;
    result.iterations = it;
    result.lambdas.assign(ritz.lambdas.begin(), ritz.lambdas.begin() + kk);
    result.u_vectors.assign(V.begin(), V.begin() + kk);
    if (kk < p) {
        const double gap = std::abs(ritz.lambdas[static_cast<size_t>(kk)] -
                                    ritz.lambdas[static_cast<size_t>(kk - 1)]) /
                           ritz.lambdas[static_cast<size_t>(kk - 1)];
        result.degenerate_at_k = gap < 1e-12;
    }

    // σ_h = S_h(λ_h u_h): one extra Poisson solve per accepted pair.
    CgOptions cg;
    cg.rel_tol = op.linear_tol;
    cg.max_iter = op.cg_max_iter;
    result.sigma_vectors.resize(static_cast<size_t>(kk));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < kk; ++i) {
        std::vector<double> rhs(static_cast<size_t>(n));
        k::spmv(op.M, result.u_vectors[static_cast<size_t>(i)], rhs);
        k::scale(result.lambdas[static_cast<size_t>(i)], rhs);
        result.sigma_vectors[static_cast<size_t>(i)] = solve_spd(op.A, *op.precond, rhs, cg);
    }
    result.residuals = residual_norms(op, result);
    return result;
}

std::vector<double> residual_norms(const DiscreteOperator& op, const EigenResult& result) {
    const int n = op.n();
    std::vector<double> out(result.lambdas.size());
    std::vector<double> as(static_cast<size_t>(n));
    std::vector<double> mu(static_cast<size_t>(n));
    for (size_t i = 0; i < result.lambdas.size(); ++i) {
        const double lam = result.lambdas[i];
        k::spmv(op.A, result.sigma_vectors[i], as);
        k::spmv(op.M, result.u_vectors[i], mu);
        double num = 0.0;
        for (int r = 0; r < n; ++r) {
            const double d = as[static_cast<size_t>(r)] - lam * mu[static_cast<size_t>(r)];
            num += d * d;
        }
        out[i] = std::sqrt(num) / (lam * k::norm2(mu));
    }
    return out;
}

}  // namespace biheig
