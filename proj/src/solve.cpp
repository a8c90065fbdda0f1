#include "biheig/solve.hpp"

#include <cmath>

#include "biheig/kernels.hpp"

namespace biheig {

namespace {

/// Lower triangle (including diagonal) of A in CSR.
SymmetricSparse lower_triangle(const SymmetricSparse& A) {
    SymmetricSparse L;
    L.n = A.n;
    L.row_ptr.assign(static_cast<size_t>(A.n) + 1, 0);
    for (int i = 0; i < A.n; ++i) {
        int count = 0;
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            if (A.col[k] <= i) ++count;
        }
        L.row_ptr[static_cast<size_t>(i) + 1] = L.row_ptr[static_cast<size_t>(i)] + count;
    }
    L.col.reserve(static_cast<size_t>(L.row_ptr[static_cast<size_t>(A.n)]));
    L.val.reserve(static_cast<size_t>(L.row_ptr[static_cast<size_t>(A.n)]));
    for (int i = 0; i < A.n; ++i) {
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            if (A.col[k] <= i) {
                L.col.push_back(A.col[k]);
                L.val.push_back(A.val[k]);
            }
        }
    }
    return L;
}

SymmetricSparse transpose(const SymmetricSparse& m) {
    SymmetricSparse t;
    t.n = m.n;
    t.row_ptr.assign(static_cast<size_t>(m.n) + 1, 0);
    for (int c : m.col) ++t.row_ptr[static_cast<size_t>(c) + 1];
    for (int i = 0; i < m.n; ++i) {
        t.row_ptr[static_cast<size_t>(i) + 1] += t.row_ptr[static_cast<size_t>(i)];
    }
    t.col.resize(m.col.size());
    t.val.resize(m.val.size());
    std::vector<int> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (int i = 0; i < m.n; ++i) {
        for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            const int pos = next[static_cast<size_t>(m.col[k])]++;
            t.col[static_cast<size_t>(pos)] = i;
            t.val[static_cast<size_t>(pos)] = m.val[k];
        }
    }
    return t;
}

/// Left-looking IC(0) on lower-CSR values (columns ascending, diagonal
/// last in each row). Returns false on pivot breakdown.
bool factor_ic0(SymmetricSparse& L) {
    const int n = L.n;
    std::vector<int> diag(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int d = L.row_ptr[i + 1] - 1;
        if (L.col[d] != i) return false;
        diag[static_cast<size_t>(i)] = d;
    }
    for (int i = 0; i < n; ++i) {
        for (int ki = L.row_ptr[i]; ki < L.row_ptr[i + 1]; ++ki) {
            const int j = L.col[ki];
            double s = L.val[static_cast<size_t>(ki)];
            // s -= Σ_{c<j} L(i,c)·L(j,c) over the shared sparsity
            int a = L.row_ptr[i];
            int b = L.row_ptr[j];
            while (a < ki && b < diag[static_cast<size_t>(j)]) {
                if (L.col[a] == L.col[b]) {
                    s -= L.val[static_cast<size_t>(a)] * L.val[static_cast<size_t>(b)];
                    ++a;
                    ++b;
                } else if (L.col[a] < L.col[b]) {
                    ++a;
                } else {
                    ++b;
                }
            }
            if (j == i) {
                if (s <= 0.0) return false;
                L.val[static_cast<size_t>(ki)] = std::sqrt(s);
            } else {
                L.val[static_cast<size_t>(ki)] =
                    s / L.val[static_cast<size_t>(diag[static_cast<size_t>(j)])];
            }
        }
    }
    return true;
}

}  // namespace

Ic0Preconditioner::Ic0Preconditioner(const SymmetricSparse& A) {
    double shift = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        lower_ = lower_triangle(A);
        if (shift > 0.0) {
            for (int i = 0; i < lower_.n; ++i) {
                const int d = lower_.row_ptr[i + 1] - 1;
                lower_.val[static_cast<size_t>(d)] *= 1.0 + shift;
            }
        }
        if (factor_ic0(lower_)) {
            upper_ = transpose(lower_);
            return;
        }
        shift = shift == 0.0 ? 1e-3 : shift * 10.0;
    }
    throw SolverError("IC(0) factorization failed after diagonal shifts", 0.0);
}

void Ic0Preconditioner::apply(const std::vector<double>& r, std::vector<double>& z) const {
    const int n = lower_.n;
    z.resize(static_cast<size_t>(n));
    // L y = r; diagonal is the last entry of each lower row.
    for (int i = 0; i < n; ++i) {
        double s = r[static_cast<size_t>(i)];
        const int end = lower_.row_ptr[i + 1] - 1;
        for (int k = lower_.row_ptr[i]; k < end; ++k) {
            s -= lower_.val[static_cast<size_t>(k)] * z[static_cast<size_t>(lower_.col[k])];
        }
        z[static_cast<size_t>(i)] = s / lower_.val[static_cast<size_t>(end)];
    }
    // Lᵀ z = y; diagonal is the first entry of each upper row.
    for (int i = n - 1; i >= 0; --i) {
        double s = z[static_cast<size_t>(i)];
        const int begin = upper_.row_ptr[i];
        for (int k = begin + 1; k < upper_.row_ptr[i + 1]; ++k) {
            s -= upper_.val[static_cast<size_t>(k)] * z[static_cast<size_t>(upper_.col[k])];
        }
        z[static_cast<size_t>(i)] = s / upper_.val[static_cast<size_t>(begin)];
    }
}

std::vector<double> solve_spd(const SymmetricSparse& A, const Ic0Preconditioner& precond,
                              const std::vector<double>& rhs, const CgOptions& opts,
                              CgStats* stats) {
    namespace k = kernels;
    const int n = A.n;
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    const double bnorm = k::norm2(rhs);
    if (stats) *stats = {};
    if (bnorm == 0.0) return x;

    std::vector<double> r = rhs;  // x0 = 0
    std::vector<double> z(static_cast<size_t>(n));
    std::vector<double> p(static_cast<size_t>(n));
    std::vector<double> Ap(static_cast<size_t>(n));

    precond.apply(r, z);
    k::copy(z, p);
    double rz = k::dot(r, z);
    const double target = opts.rel_tol * bnorm;
    int it = 0;

    while (it < opts.max_iter) {
        ++it;
        k::spmv(A, p, Ap);
        const double pAp = k::dot(p, Ap);
        if (pAp <= 0.0) {
            throw SolverError("PCG: matrix not positive definite on search direction",
                              k::norm2(r) / bnorm);
        }
        const double alpha = rz / pAp;
        k::axpy(alpha, p, x);
        k::axpy(-alpha, Ap, r);
        if (k::norm2(r) <= target) {
            // Confirm against the true residual; the recurrence can drift.
            k::spmv(A, x, Ap);
            for (int i = 0; i < n; ++i) {
                r[static_cast<size_t>(i)] = rhs[static_cast<size_t>(i)] - Ap[static_cast<size_t>(i)];
            }
            const double true_res = k::norm2(r);
            if (true_res <= target) {
                if (stats) *stats = {it, true_res / bnorm};
                return x;
            }
            precond.apply(r, z);
            k::copy(z, p);
            rz = k::dot(r, z);
            continue;
        }
        precond.apply(r, z);
        const double rz_new = k::dot(r, z);
        k::xpay(z, rz_new / rz, p);
        rz = rz_new;
    }
    throw SolverError("PCG: iteration cap reached", k::norm2(r) / bnorm);
}

std::vector<double> solve_spd(const SymmetricSparse& A, const std::vector<double>& rhs,
                              const CgOptions& opts, CgStats* stats) {
    Ic0Preconditioner precond(A);
    return solve_spd(A, precond, rhs, opts, stats);
}

}  // namespace biheig
