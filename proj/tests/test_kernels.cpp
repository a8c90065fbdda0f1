#include "doctest.h"

#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "biheig/assemble.hpp"
#include "biheig/kernels.hpp"
#include "biheig/mesh.hpp"

using namespace biheig;

namespace {
SymmetricSparse test_matrix() {
    TriangleMesh mesh = build_initial_mesh(DomainKind::LShape);
    for (int l = 0; l < 4; ++l) mesh = refine_red(mesh);
    return assemble_stiffness(mesh, interior_index(mesh));
}

std::vector<double> random_vector(size_t n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(n);
    for (double& x : v) x = std::uniform_real_distribution<double>(-1.0, 1.0)(gen);
    return v;
}
}  // namespace

TEST_CASE("parallel kernels agree with the serial references") {
    const SymmetricSparse A = test_matrix();
    const size_t n = static_cast<size_t>(A.n);
    const std::vector<double> x = random_vector(n, 1);
    std::vector<double> y_par(n), y_ser(n);

    // Row-parallel spmv does each row in the same order as the serial loop.
    kernels::spmv(A, x, y_par);
    kernels::serial::spmv(A, x, y_ser);
    CHECK(std::memcmp(y_par.data(), y_ser.data(), n * sizeof(double)) == 0);

    // Chunked reduction may differ from the straight sum only by rounding.
    const double d_par = kernels::dot(x, y_par);
    const double d_ser = kernels::serial::dot(x, y_ser);
    CHECK(d_par == doctest::Approx(d_ser).epsilon(1e-13));

    std::vector<double> a_par = y_par, a_ser = y_ser;
    kernels::axpy(0.37, x, a_par);
    kernels::serial::axpy(0.37, x, a_ser);
    CHECK(std::memcmp(a_par.data(), a_ser.data(), n * sizeof(double)) == 0);

    std::vector<double> p_par = y_par, p_ser = y_ser;
    kernels::xpay(x, -1.21, p_par);
    kernels::serial::xpay(x, -1.21, p_ser);
    CHECK(std::memcmp(p_par.data(), p_ser.data(), n * sizeof(double)) == 0);
}

#ifdef _OPENMP
TEST_CASE("results are independent of the thread count") {
    const SymmetricSparse A = test_matrix();
    const size_t n = static_cast<size_t>(A.n);
    const std::vector<double> x = random_vector(n, 2);
    const std::vector<double> y = random_vector(n, 3);

    const int saved = omp_get_max_threads();
    std::vector<double> dot_results;
    std::vector<std::vector<double>> spmv_results;
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        dot_results.push_back(kernels::dot(x, y));
        std::vector<double> out(n);
        kernels::spmv(A, x, out);
        spmv_results.push_back(std::move(out));
    }
    omp_set_num_threads(saved);

    for (size_t i = 1; i < dot_results.size(); ++i) {
        CHECK(dot_results[i] == dot_results[0]);  // bit-identical
        CHECK(std::memcmp(spmv_results[i].data(), spmv_results[0].data(),
                          n * sizeof(double)) == 0);
    }
}
#endif
