#pragma once

#include <array>
#include <vector>

#include "biheig/geometry.hpp"

namespace biheig {

/// Interior-point quadrature rule on the reference triangle in barycentric
/// coordinates. Weights sum to 1 (they multiply the physical area).
struct QuadratureRule {
    int order = 0;  // exactness degree
    struct Point {
        std::array<double, 3> bary;
        double weight;
    };
    std::vector<Point> points;
};

/// Rules of exactness degree 1, 2, 4 or 6. All points strictly interior,
/// all weights positive.
const QuadratureRule& triangle_rule(int order);

/// Exact integral of x^p y^q over the reference triangle {x,y>=0, x+y<=1}.
double reference_monomial_integral(int p, int q);

inline Vec2 barycentric_point(Vec2 a, Vec2 b, Vec2 c, const std::array<double, 3>& l) {
    return l[0] * a + l[1] * b + l[2] * c;
}

}  // namespace biheig
