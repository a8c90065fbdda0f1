#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biheig/sparse.hpp"

namespace biheig::kernels {

// OpenMP kernels. All of them give bit-identical results for any thread
// count: spmv assigns whole rows to threads, reductions sum fixed-size
// chunks whose partials are combined in index order.

/// y = A x (row-parallel).
void spmv(const SymmetricSparse& A, std::span<const double> x, std::span<double> y);

/// Chunked deterministic dot product.
double dot(std::span<const double> x, std::span<const double> y);

double norm2(std::span<const double> x);

/// y += a*x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y = x + a*y
void xpay(std::span<const double> x, double a, std::span<double> y);

void scale(double a, std::span<double> x);

void copy(std::span<const double> x, std::span<double> y);

void fill(std::span<double> x, double value);

namespace serial {

// Plain single-threaded reference implementations, kept for tests and the
// kernel benchmark. spmv/axpy agree bit-exactly with the parallel versions;
// dot/norm2 may differ by rounding since they sum straight through.

void spmv(const SymmetricSparse& A, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double a, std::span<double> y);

}  // namespace serial

}  // namespace biheig::kernels
