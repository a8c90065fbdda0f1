#include "biheig/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace biheig::kernels {

namespace {
// Reduction chunk size is a compile-time constant so the summation tree is
// the same no matter how many threads run the loop.
constexpr std::ptrdiff_t kChunk = 4096;
}  // namespace

void spmv(const SymmetricSparse& A, std::span<const double> x, std::span<double> y) {
    const int n = A.n;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            s += A.val[k] * x[A.col[k]];
        }
        y[i] = s;
    }
}

double dot(std::span<const double> x, std::span<const double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t nchunks = (n + kChunk - 1) / kChunk;
    if (nchunks <= 1) return serial::dot(x, y);
    std::vector<double> partial(static_cast<size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
        const std::ptrdiff_t lo = c * kChunk;
        const std::ptrdiff_t hi = std::min(lo + kChunk, n);
        double s = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) s += x[i] * y[i];
        partial[static_cast<size_t>(c)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scale(double a, std::span<double> x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= a;
}

void copy(std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i];
}

void fill(std::span<double> x, double value) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) x[i] = value;
}

namespace serial {

void spmv(const SymmetricSparse& A, std::span<const double> x, std::span<double> y) {
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            s += A.val[k] * x[A.col[k]];
        }
        y[i] = s;
    }
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * y[i];
}

}  // namespace serial

}  // namespace biheig::kernels
