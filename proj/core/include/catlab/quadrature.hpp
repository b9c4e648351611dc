#pragma once

#include <vector>

namespace catlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Hermite rule for the weight e^{-x^2}, nodes ascending.
QuadratureRule gauss_hermite(int n);

}  // namespace catlab
