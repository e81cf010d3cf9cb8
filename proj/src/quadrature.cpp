#include "gconc/quadrature.hpp"

#include <cmath>

#include "gconc/errors.hpp"

namespace gconc {

// Newton iteration on Legendre polynomials; nodes computed on [-1,1] and
// mapped to [0,1] (weights halved so they sum to the interval length 1).
QuadratureRule gauss_legendre_01(int node_count) {
    if (node_count < 1) throw NonPositiveInput("quadrature needs at least one node");

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(node_count));
    rule.weights.resize(static_cast<std::size_t>(node_count));

    const int n = node_count;
    const int m = (n + 1) / 2;
    const double pi = 3.14159265358979323846;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i - 1)] = 0.5 * (1.0 - z);
        rule.nodes[static_cast<std::size_t>(n - i)] = 0.5 * (1.0 + z);
        rule.weights[static_cast<std::size_t>(i - 1)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(n - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace gconc
