#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gconc/rng.hpp"

namespace gconc {

/// Multivariate normal N(mu, Sigma) with cached spectral quantities.
///
/// Sigma must be symmetric (max absolute asymmetry 1e-12) and positive
/// semi-definite up to a relative eigenvalue tolerance of 1e-10; eigenvalues
/// in [-1e-10*||Sigma||, 0) are clamped to zero. The square root is the
/// symmetric PSD one from the eigendecomposition, so singular covariances are
/// fine. Immutable after construction and safe to share across threads.
class GaussianModel {
public:
    GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    int dim() const { return static_cast<int>(mean_.size()); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const Eigen::MatrixXd& sqrt_cov() const { return sqrt_cov_; }

    /// Largest eigenvalue of Sigma (weak second moment).
    double lambda_star() const { return lambda_star_; }

    /// Largest diagonal entry of Sigma (strong second moment).
    double sigma_star_sq() const { return sigma_star_sq_; }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd sqrt_cov_;
    double lambda_star_ = 0.0;
    double sigma_star_sq_ = 0.0;
};

GaussianModel build_model(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma);

double max_eigenvalue(const GaussianModel& model);
double strong_second_moment(const GaussianModel& model);

/// n draws of X ~ N(mu, Sigma), one per row. Deterministic in (seed, stream).
Eigen::MatrixXd sample_gaussian(const GaussianModel& model, std::int64_t n, RngStream rng);

/// Paired draws (X_alpha, Y_alpha): common N(mu, Sigma) marginals with
/// cross-covariance alpha*Sigma.
struct CoupledSampleBatch {
    double alpha = 0.0;
    Eigen::MatrixXd x_samples;
    Eigen::MatrixXd y_samples;
    std::uint64_t seed = 0;
};

/// Two-factor construction: X = mu + S z1, Y = mu + S (alpha z1 +
/// sqrt(1-alpha^2) z2). At alpha = 1 the rows of Y are copied from X, so the
/// fully dependent case is bit-identical.
CoupledSampleBatch sample_coupled(const GaussianModel& model, double alpha, std::int64_t n,
                                  RngStream rng);

}  // namespace gconc
