#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "gconc/fields.hpp"
#include "gconc/gaussian.hpp"
#include "gconc/quadrature.hpp"
#include "gconc/rng.hpp"
#include "gconc/stats.hpp"

namespace gconc {

/// Per-quadrature-node Monte Carlo summary of the interpolation integrand.
struct NodeEstimate {
    double alpha = 0.0;
    double weight = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::int64_t n = 0;
};

struct RepresentationConfig {
    std::int64_t n_lhs = 100000;
    std::int64_t n_per_node = 3125;
    int quad_nodes = 32;
    double ci_level = 0.95;
    bool include_ou = false;
    int jackknife_blocks = 50;
    int workers = 1;
};

/// Both sides of the covariance identity with a consistency verdict:
/// gap <= lhs half-width + rhs half-width.
struct RepresentationReport {
    MCEstimate lhs;
    MCEstimate rhs;
    std::optional<MCEstimate> rhs_ou;
    double gap = 0.0;
    bool consistent = false;
};

/// Cov(f(X), g(X)) from one batch: mean(fg) - mean(f)mean(g), standard error
/// by leave-one-block-out jackknife.
MCEstimate covariance_mc(const GaussianModel& model, const ScalarField& f, const ScalarField& g,
                         std::int64_t n, RngStream rng, double ci_level = 0.95,
                         int jackknife_blocks = 50);

/// Quadrature-weighted estimate of the interpolation integral
/// int_0^1 E <Sigma grad f(X_a), grad g(Y_a)> da. One independent coupled
/// batch per node (stream id = node index); node variances combine with
/// squared weights.
MCEstimate representation_rhs(const GaussianModel& model, const ScalarField& f,
                              const ScalarField& g, const QuadratureRule& quad,
                              std::int64_t n_per_node, RngStream rng, double ci_level = 0.95,
                              int workers = 1, std::vector<NodeEstimate>* node_details = nullptr);

/// Ornstein-Uhlenbeck form of the same integral, evaluated after whitening
/// (f~(z) = f(mu + S z), so grad f~ = S grad f). The substitution a = e^{-t}
/// maps the infinite t-domain back onto the [0,1] rule; the coupling
/// (Z, aZ + sqrt(1-a^2)Z') uses standard normal factors.
MCEstimate representation_rhs_ou(const GaussianModel& model, const ScalarField& f,
                                 const ScalarField& g, const QuadratureRule& quad,
                                 std::int64_t n_per_node, RngStream rng, double ci_level = 0.95,
                                 int workers = 1,
                                 std::vector<NodeEstimate>* node_details = nullptr);

/// Runs LHS and RHS (and optionally the OU form) on independent streams.
RepresentationReport verify_representation(const GaussianModel& model, const ScalarField& f,
                                           const ScalarField& g, const RepresentationConfig& config,
                                           RngStream rng);

/// f(x) = sum_j coefficients[j] * e^{i<frequencies.row(j), x>}.
struct TrigPolynomial {
    Eigen::MatrixXd frequencies;  // one frequency vector per row
    Eigen::VectorXcd coefficients;
};

/// Both sides of the covariance identity in closed form (no sampling) for
/// trigonometric polynomials; returns lhs - rhs. The alpha-integral of each
/// (j,k) term is evaluated by the supplied quadrature rule.
std::complex<double> trig_polynomial_check(const GaussianModel& model, const TrigPolynomial& f,
                                           const TrigPolynomial& g, const QuadratureRule& quad);

}  // namespace gconc
