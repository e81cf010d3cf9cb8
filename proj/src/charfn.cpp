#include "gconc/charfn.hpp"

#include <string>

#include "gconc/errors.hpp"

namespace gconc {

namespace {

void check_freq(const GaussianModel& model, const Eigen::VectorXd& t) {
    if (t.size() != model.dim())
        throw DimensionMismatch("frequency has length " + std::to_string(t.size()) +
                                ", model dimension is " + std::to_string(model.dim()));
}

}  // namespace

std::complex<double> log_phi_x(const GaussianModel& model, const Eigen::VectorXd& t) {
    check_freq(model, t);
    return {-0.5 * t.dot(model.cov() * t), model.mean().dot(t)};
}

std::complex<double> phi_x(const GaussianModel& model, const Eigen::VectorXd& t) {
    return std::exp(log_phi_x(model, t));
}

std::complex<double> phi_alpha(const GaussianModel& model, double alpha,
                               const FrequencyPair& pair) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw AlphaOutOfRange("alpha = " + std::to_string(alpha) + " outside [0,1]");
    if (alpha == 0.0) return phi_x(model, pair.t) * phi_x(model, pair.s);
    if (alpha == 1.0) return phi_x(model, pair.t + pair.s);
    std::complex<double> z1 = log_phi_x(model, pair.t + pair.s);
    std::complex<double> z2 = log_phi_x(model, pair.t);
    std::complex<double> z3 = log_phi_x(model, pair.s);
    return std::exp(alpha * z1 + (1.0 - alpha) * (z2 + z3));
}

std::complex<double> phi_alpha_derivative(const GaussianModel& model, double alpha,
                                          const FrequencyPair& pair) {
    double rate = pair.t.dot(model.cov() * pair.s);
    return -rate * phi_alpha(model, alpha, pair);
}

std::complex<double> verify_interpolation_identity(const GaussianModel& model,
                                                   const FrequencyPair& pair,
                                                   const QuadratureRule& quad) {
    std::complex<double> integral = 0.0;
    for (int k = 0; k < quad.node_count(); ++k)
        integral += quad.weights[static_cast<std::size_t>(k)] *
                    phi_alpha_derivative(model, quad.nodes[static_cast<std::size_t>(k)], pair);
    return phi_alpha(model, 1.0, pair) - phi_alpha(model, 0.0, pair) - integral;
}

}  // namespace gconc
