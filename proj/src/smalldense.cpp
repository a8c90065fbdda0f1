#include "biheig/smalldense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biheig {

void jacobi_eigh(int n, std::vector<double> a, std::vector<double>& values,
                 std::vector<double>& vectors) {
    const size_t nn = static_cast<size_t>(n);
    std::vector<double> v(nn * nn, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * nn + static_cast<size_t>(i)] = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double x = a[static_cast<size_t>(i) * nn + static_cast<size_t>(j)];
                s += x * x;
            }
        }
        return std::sqrt(2.0 * s);
    };
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double tol = 1e-15 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 64 && off_norm() > tol * n; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<size_t>(p) * nn + static_cast<size_t>(q)];
                if (std::abs(apq) <= tol * 1e-2) continue;
                const double app = a[static_cast<size_t>(p) * nn + static_cast<size_t>(p)];
                const double aqq = a[static_cast<size_t>(q) * nn + static_cast<size_t>(q)];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[static_cast<size_t>(i) * nn + static_cast<size_t>(p)];
                    const double aiq = a[static_cast<size_t>(i) * nn + static_cast<size_t>(q)];
                    a[static_cast<size_t>(i) * nn + static_cast<size_t>(p)] = c * aip - s * aiq;
                    a[static_cast<size_t>(i) * nn + static_cast<size_t>(q)] = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a[static_cast<size_t>(p) * nn + static_cast<size_t>(j)];
                    const double aqj = a[static_cast<size_t>(q) * nn + static_cast<size_t>(j)];
                    a[static_cast<size_t>(p) * nn + static_cast<size_t>(j)] = c * apj - s * aqj;
                    a[static_cast<size_t>(q) * nn + static_cast<size_t>(j)] = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[static_cast<size_t>(i) * nn + static_cast<size_t>(p)];
                    const double viq = v[static_cast<size_t>(i) * nn + static_cast<size_t>(q)];
                    v[static_cast<size_t>(i) * nn + static_cast<size_t>(p)] = c * vip - s * viq;
                    v[static_cast<size_t>(i) * nn + static_cast<size_t>(q)] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(nn);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<size_t>(i) * nn + static_cast<size_t>(i)] <
               a[static_cast<size_t>(j) * nn + static_cast<size_t>(j)];
    });

    values.resize(nn);
    vectors.assign(nn * nn, 0.0);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        values[static_cast<size_t>(j)] = a[static_cast<size_t>(src) * nn + static_cast<size_t>(src)];
        // Deterministic sign: largest-magnitude component positive.
        int imax = 0;
        double vmax = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = std::abs(v[static_cast<size_t>(i) * nn + static_cast<size_t>(src)]);
            if (x > vmax) {
                vmax = x;
                imax = i;
            }
        }
        const double sign =
            v[static_cast<size_t>(imax) * nn + static_cast<size_t>(src)] < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) {
            vectors[static_cast<size_t>(i) * nn + static_cast<size_t>(j)] =
                sign * v[static_cast<size_t>(i) * nn + static_cast<size_t>(src)];
        }
    }
}

std::vector<double> cholesky_solve(int n, std::vector<double> a, const std::vector<double>& rhs) {
    const size_t nn = static_cast<size_t>(n);
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<size_t>(j) * nn + static_cast<size_t>(j)];
        for (int k = 0; k < j; ++k) {
            const double l = a[static_cast<size_t>(j) * nn + static_cast<size_t>(k)];
            d -= l * l;
        }
        if (d <= 0.0) throw std::runtime_error("cholesky_solve: matrix not positive definite");
        const double ljj = std::sqrt(d);
        a[static_cast<size_t>(j) * nn + static_cast<size_t>(j)] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<size_t>(i) * nn + static_cast<size_t>(j)];
            for (int k = 0; k < j; ++k) {
                s -= a[static_cast<size_t>(i) * nn + static_cast<size_t>(k)] *
                     a[static_cast<size_t>(j) * nn + static_cast<size_t>(k)];
            }
            a[static_cast<size_t>(i) * nn + static_cast<size_t>(j)] = s / ljj;
        }
    }
    std::vector<double> x = rhs;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) {
            x[static_cast<size_t>(i)] -=
                a[static_cast<size_t>(i) * nn + static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        }
        x[static_cast<size_t>(i)] /= a[static_cast<size_t>(i) * nn + static_cast<size_t>(i)];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) {
            x[static_cast<size_t>(i)] -=
                a[static_cast<size_t>(k) * nn + static_cast<size_t>(i)] * x[static_cast<size_t>(k)];
        }
        x[static_cast<size_t>(i)] /= a[static_cast<size_t>(i) * nn + static_cast<size_t>(i)];
    }
    return x;
}

}  // namespace biheig
