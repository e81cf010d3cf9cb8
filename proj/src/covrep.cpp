#include "gconc/covrep.hpp"

#include <cmath>

#include "gconc/charfn.hpp"
#include "gconc/errors.hpp"
#include "gconc/parallel.hpp"

namespace gconc {

namespace {

constexpr std::int64_t kChunkRows = 1 << 14;

void check_field_dims(const GaussianModel& model, const ScalarField& f, const ScalarField& g) {
    if (f.dim() != model.dim() || g.dim() != model.dim())
        throw DimensionMismatch("field dimension does not match model dimension");
}

// Integrand <Sigma grad f(x), grad g(y)> for one coupled batch.
StreamingMoments coupled_integrand_moments(const GaussianModel& model, const ScalarField& f,
                                           const ScalarField& g, const CoupledSampleBatch& batch,
                                           bool whitened) {
    StreamingMoments m;
    const Eigen::MatrixXd& sigma = model.cov();
    const Eigen::MatrixXd& s = model.sqrt_cov();
    std::int64_t n = batch.x_samples.rows();
    for (std::int64_t i = 0; i < n; ++i) {
        Eigen::VectorXd gx, gy;
        if (whitened) {
            // grad of z -> f(mu + S z) is S grad f(mu + S z)
            Eigen::VectorXd x = model.mean() + s * batch.x_samples.row(i).transpose();
            Eigen::VectorXd y = model.mean() + s * batch.y_samples.row(i).transpose();
            gx = s * f.gradient(x);
            gy = s * g.gradient(y);
            m.add(gx.dot(gy));
        } else {
            gx = f.gradient(batch.x_samples.row(i).transpose());
            gy = g.gradient(batch.y_samples.row(i).transpose());
            m.add(gx.dot(sigma * gy));
        }
    }
    if (!std::isfinite(m.mean) || !std::isfinite(m.m2))
        throw NonFiniteResult("coupled integrand produced a non-finite value");
    return m;
}

MCEstimate rhs_impl(const GaussianModel& model, const ScalarField& f, const ScalarField& g,
                    const QuadratureRule& quad, std::int64_t n_per_node, RngStream rng,
                    double ci_level, int workers, std::vector<NodeEstimate>* node_details,
                    bool whitened) {
    check_field_dims(model, f, g);
    if (n_per_node < 2) throw NonPositiveInput("need at least two samples per node");

    // The whitened route integrates over standard normal factors.
    GaussianModel sampling_model =
        whitened ? GaussianModel(Eigen::VectorXd::Zero(model.dim()),
                                 Eigen::MatrixXd::Identity(model.dim(), model.dim()))
                 : model;

    std::size_t n_nodes = quad.nodes.size();
    std::vector<NodeEstimate> nodes(n_nodes);
    parallel_for(n_nodes, workers, [&](std::size_t k) {
        double alpha = quad.nodes[k];
        CoupledSampleBatch batch =
            sample_coupled(sampling_model, alpha, n_per_node, rng.substream(k));
        StreamingMoments m = coupled_integrand_moments(model, f, g, batch, whitened);
        nodes[k] = {alpha, quad.weights[k], m.mean, m.variance(), m.n};
    });

    double mean = 0.0;
    double var = 0.0;
    for (const NodeEstimate& node : nodes) {
        mean += node.weight * node.mean;
        var += node.weight * node.weight * node.variance / static_cast<double>(node.n);
    }
    if (node_details) *node_details = std::move(nodes);
    return estimate_with_std_error(mean, std::sqrt(var),
                                   static_cast<std::int64_t>(n_nodes) * n_per_node, ci_level);
}

}  // namespace

MCEstimate covariance_mc(const GaussianModel& model, const ScalarField& f, const ScalarField& g,
                         std::int64_t n, RngStream rng, double ci_level, int jackknife_blocks) {
    check_field_dims(model, f, g);
    if (n < 2) throw NonPositiveInput("covariance needs at least two samples");

    std::vector<double> fv(static_cast<std::size_t>(n));
    std::vector<double> gv(static_cast<std::size_t>(n));
    std::int64_t n_chunks = (n + kChunkRows - 1) / kChunkRows;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        std::int64_t lo = c * kChunkRows;
        std::int64_t rows = std::min<std::int64_t>(kChunkRows, n - lo);
        Eigen::MatrixXd x = sample_gaussian(model, rows, rng.substream(static_cast<std::uint64_t>(c)));
        for (std::int64_t i = 0; i < rows; ++i) {
            double vf = f.value(x.row(i).transpose());
            double vg = g.value(x.row(i).transpose());
            if (!std::isfinite(vf) || !std::isfinite(vg))
                throw NonFiniteResult("field evaluation produced a non-finite value");
            fv[static_cast<std::size_t>(lo + i)] = vf;
            gv[static_cast<std::size_t>(lo + i)] = vg;
        }
    }

    double sum_f = 0.0, sum_g = 0.0, sum_fg = 0.0;
    for (std::size_t i = 0; i < fv.size(); ++i) {
        sum_f += fv[i];
        sum_g += gv[i];
        sum_fg += fv[i] * gv[i];
    }
    double inv_n = 1.0 / static_cast<double>(n);
    double mean = sum_fg * inv_n - (sum_f * inv_n) * (sum_g * inv_n);
    double se = jackknife_covariance_std_error(fv, gv, jackknife_blocks);
    return estimate_with_std_error(mean, se, n, ci_level);
}

MCEstimate representation_rhs(const GaussianModel& model, const ScalarField& f,
                              const ScalarField& g, const QuadratureRule& quad,
                              std::int64_t n_per_node, RngStream rng, double ci_level, int workers,
                              std::vector<NodeEstimate>* node_details) {
    return rhs_impl(model, f, g, quad, n_per_node, rng, ci_level, workers, node_details, false);
}

MCEstimate representation_rhs_ou(const GaussianModel& model, const ScalarField& f,
                                 const ScalarField& g, const QuadratureRule& quad,
                                 std::int64_t n_per_node, RngStream rng, double ci_level,
                                 int workers, std::vector<NodeEstimate>* node_details) {
    return rhs_impl(model, f, g, quad, n_per_node, rng, ci_level, workers, node_details, true);
}

RepresentationReport verify_representation(const GaussianModel& model, const ScalarField& f,
                                           const ScalarField& g, const RepresentationConfig& config,
                                           RngStream rng) {
    RepresentationReport report;
    QuadratureRule quad = gauss_legendre_01(config.quad_nodes);
    report.lhs = covariance_mc(model, f, g, config.n_lhs, rng.substream(1), config.ci_level,
                               config.jackknife_blocks);
    report.rhs = representation_rhs(model, f, g, quad, config.n_per_node, rng.substream(2),
                                    config.ci_level, config.workers);
    if (config.include_ou)
        report.rhs_ou = representation_rhs_ou(model, f, g, quad, config.n_per_node,
                                              rng.substream(3), config.ci_level, config.workers);
    report.gap = std::abs(report.lhs.mean - report.rhs.mean);
    report.consistent = report.gap <= report.lhs.ci_half_width + report.rhs.ci_half_width;
    return report;
}

std::complex<double> trig_polynomial_check(const GaussianModel& model, const TrigPolynomial& f,
                                           const TrigPolynomial& g, const QuadratureRule& quad) {
    if (f.frequencies.cols() != model.dim() || g.frequencies.cols() != model.dim())
        throw DimensionMismatch("trig polynomial frequency dimension does not match model");
    if (f.frequencies.rows() != f.coefficients.size() ||
        g.frequencies.rows() != g.coefficients.size())
        throw DimensionMismatch("trig polynomial coefficient count does not match frequencies");

    std::complex<double> residual = 0.0;
    for (Eigen::Index j = 0; j < f.frequencies.rows(); ++j) {
        for (Eigen::Index k = 0; k < g.frequencies.rows(); ++k) {
            FrequencyPair pair{f.frequencies.row(j).transpose(), g.frequencies.row(k).transpose()};
            std::complex<double> lhs =
                phi_alpha(model, 1.0, pair) - phi_alpha(model, 0.0, pair);
            std::complex<double> integral = 0.0;
            for (std::size_t q = 0; q < quad.nodes.size(); ++q)
                integral += quad.weights[q] * phi_alpha_derivative(model, quad.nodes[q], pair);
            residual += f.coefficients[j] * g.coefficients[k] * (lhs - integral);
        }
    }
    return residual;
}

}  // namespace gconc
