#pragma once

#include <vector>

#include "thermocq/geom.hpp"

namespace thermocq {

// nodes/weights on [0,1]
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

// n-point Gauss-Legendre on [0,1]; exact for polynomials of degree 2n-1
Rule1D gauss_legendre(int n);

// n-point Gauss rule for the weight -ln(x) on (0,1):
//   int_0^1 f(x) (-ln x) dx ~ sum w_i f(x_i),  exact for deg(f) <= 2n-1
// (available for n = 1..16)
Rule1D gauss_log(int n);

// quadrature on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2
struct TriangleRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int size() const { return static_cast<int>(points.size()); }
};

// conical-product Gauss rule, exact for total degree <= order
TriangleRule triangle_rule(int order);

} // namespace thermocq
