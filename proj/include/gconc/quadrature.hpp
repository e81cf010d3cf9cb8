#pragma once

#include <vector>

namespace gconc {

/// Gauss-Legendre rule on [0, 1]: nodes in (0, 1), positive weights summing
/// to 1, exact for polynomials of degree <= 2*node_count - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int node_count() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule gauss_legendre_01(int node_count);

}  // namespace gconc
