#include "biheig/quadrature.hpp"

#include <stdexcept>

namespace biheig {

namespace {

void add3(QuadratureRule& r, double a, double w) {
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({{b, a, a}, w});
    r.points.push_back({{a, b, a}, w});
    r.points.push_back({{a, a, b}, w});
}

void add6(QuadratureRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    r.points.push_back({{a, b, c}, w});
    r.points.push_back({{a, c, b}, w});
    r.points.push_back({{b, a, c}, w});
    r.points.push_back({{b, c, a}, w});
    r.points.push_back({{c, a, b}, w});
    r.points.push_back({{c, b, a}, w});
}

QuadratureRule make_rule(int order) {
    QuadratureRule r;
    r.order = order;
    switch (order) {
        case 1:
            r.points.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0});
            break;
        case 2:
            add3(r, 1.0 / 6.0, 1.0 / 3.0);
            break;
        case 4:  // Dunavant
            add3(r, 0.091576213509771, 0.109951743655322);
            add3(r, 0.445948490915965, 0.223381589678011);
            break;
        case 6:  // Dunavant
            add3(r, 0.063089014491502, 0.050844906370207);
            add3(r, 0.249286745170910, 0.116786275726379);
            add6(r, 0.053145049844816, 0.310352451033785, 0.082851075618374);
            break;
        default:
            throw std::invalid_argument("triangle_rule: unsupported order");
    }
    return r;
}

}  // namespace

const QuadratureRule& triangle_rule(int order) {
    static const QuadratureRule r1 = make_rule(1);
    static const QuadratureRule r2 = make_rule(2);
    static const QuadratureRule r4 = make_rule(4);
    static const QuadratureRule r6 = make_rule(6);
    switch (order) {
        case 1: return r1;
        case 2: return r2;
        case 4: return r4;
        case 6: return r6;
        default: throw std::invalid_argument("triangle_rule: unsupported order");
    }
}

double reference_monomial_integral(int p, int q) {
    // p! q! / (p+q+2)!
    double value = 1.0;
    for (int k = 1; k <= p; ++k) value *= k;
    for (int k = 1; k <= q; ++k) value *= k;
    for (int k = 1; k <= p + q + 2; ++k) value /= k;
    return value;
}

}  // namespace biheig
