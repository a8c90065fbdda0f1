// Kernel benchmark: OpenMP versions against the serial references on
// matrices assembled from an actual refinement level.
//
//   biheig_bench [domain] [level] [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "biheig/assemble.hpp"
#include "biheig/kernels.hpp"
#include "biheig/mesh.hpp"
#include "biheig/solve.hpp"

using namespace biheig;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename Fn>
double time_best_of(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const DomainKind domain = argc > 1 ? domain_from_name(argv[1]) : DomainKind::LShape;
    const int level = argc > 2 ? std::atoi(argv[2]) : 6;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

    TriangleMesh mesh = build_initial_mesh(domain);
    for (int l = 0; l < level; ++l) mesh = refine_red(mesh);
    const DofMap dofs = interior_index(mesh);

#ifdef _OPENMP
    std::printf("domain=%s level=%d dofs=%d triangles=%d threads=%d\n", domain_name(domain),
                level, dofs.n_dofs, mesh.n_triangles(), omp_get_max_threads());
#else
    std::printf("domain=%s level=%d dofs=%d triangles=%d (OpenMP off)\n", domain_name(domain),
                level, dofs.n_dofs, mesh.n_triangles());
#endif

    const double t_asm = time_best_of(repeats, [&] { assemble_stiffness(mesh, dofs); });
    const SymmetricSparse A = assemble_stiffness(mesh, dofs);
    const size_t n = static_cast<size_t>(A.n);

    std::vector<double> x(n), y(n), y2(n);
    for (size_t i = 0; i < n; ++i) x[i] = 1.0 + 1e-3 * static_cast<double>(i % 97);

    const int inner = 50;
    double sink = 0.0;
    const double t_spmv_par = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) kernels::spmv(A, x, y);
    });
    const double t_spmv_ser = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) kernels::serial::spmv(A, x, y2);
    });
    sink += y[0] + y2[0];

    const double t_dot_par = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) sink += kernels::dot(x, y);
    });
    const double t_dot_ser = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) sink += kernels::serial::dot(x, y);
    });

    const double t_axpy_par = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) kernels::axpy(1e-9, x, y);
    });
    const double t_axpy_ser = time_best_of(repeats, [&] {
        for (int i = 0; i < inner; ++i) kernels::serial::axpy(1e-9, x, y2);
    });
    sink += y[1] + y2[1];

    std::vector<double> rhs(n, 1.0);
    CgStats stats;
    const Ic0Preconditioner precond(A);
    const double t_solve = time_best_of(std::max(1, repeats / 2), [&] {
        auto sol = solve_spd(A, precond, rhs, {}, &stats);
        sink += sol[0];
    });

    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
    auto row = [](const char* name, double ser, double par) {
        std::printf("%-22s %12.3f %12.3f %8.2fx\n", name, ser * 1e3, par * 1e3, ser / par);
    };
    row("spmv x50", t_spmv_ser, t_spmv_par);
    row("dot x50", t_dot_ser, t_dot_par);
    row("axpy x50", t_axpy_ser, t_axpy_par);
    std::printf("%-22s %25.3f ms\n", "assemble stiffness", t_asm * 1e3);
    std::printf("%-22s %25.3f ms  (%d iterations, rel res %.2e)\n", "pcg+ic0 solve",
                t_solve * 1e3, stats.iterations, stats.rel_residual);
    std::printf("checksum %.6g\n", sink);
    return 0;
}
