#include "gconc/gaussian.hpp"

#include <cmath>
#include <string>

#include "gconc/errors.hpp"

namespace gconc {

namespace {

constexpr double kAsymmetryTol = 1e-12;
constexpr double kEigenRelTol = 1e-10;

Eigen::MatrixXd standard_normal_matrix(std::int64_t rows, int cols, RngStream& rng) {
    Eigen::MatrixXd z(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) z(i, j) = rng.normal();
    return z;
}

}  // namespace

GaussianModel::GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols()) throw DimensionMismatch("covariance must be square");
    if (cov_.rows() != mean_.size())
        throw DimensionMismatch("mean has length " + std::to_string(mean_.size()) +
                                " but covariance is " + std::to_string(cov_.rows()) + "x" +
                                std::to_string(cov_.cols()));
    if (mean_.size() == 0) throw DimensionMismatch("dimension must be positive");

    double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kAsymmetryTol)
        throw NotSymmetric("covariance asymmetry " + std::to_string(asym) + " exceeds 1e-12");
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_);
    Eigen::VectorXd evals = solver.eigenvalues();
    double scale = evals.cwiseAbs().maxCoeff();
    double floor = -kEigenRelTol * scale;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] < floor)
            throw NotPSD("eigenvalue " + std::to_string(evals[i]) +
                         " below PSD tolerance " + std::to_string(floor));
        if (evals[i] < 0.0) evals[i] = 0.0;
    }
    sqrt_cov_ = solver.eigenvectors() * evals.cwiseSqrt().asDiagonal() *
                solver.eigenvectors().transpose();
    sqrt_cov_ = ((sqrt_cov_ + sqrt_cov_.transpose()) / 2.0).eval();
    lambda_star_ = evals.maxCoeff();
    sigma_star_sq_ = std::max(0.0, cov_.diagonal().maxCoeff());
}

GaussianModel build_model(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma) {
    return GaussianModel(mu, sigma);
}

double max_eigenvalue(const GaussianModel& model) { return model.lambda_star(); }

double strong_second_moment(const GaussianModel& model) { return model.sigma_star_sq(); }

Eigen::MatrixXd sample_gaussian(const GaussianModel& model, std::int64_t n, RngStream rng) {
    if (n < 1) throw NonPositiveInput("sample count must be >= 1");
    Eigen::MatrixXd z = standard_normal_matrix(n, model.dim(), rng);
    Eigen::MatrixXd x = z * model.sqrt_cov();  // S symmetric, so rows are S z
    x.rowwise() += model.mean().transpose();
    return x;
}

CoupledSampleBatch sample_coupled(const GaussianModel& model, double alpha, std::int64_t n,
                                  RngStream rng) {
    if (n < 1) throw NonPositiveInput("sample count must be >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw AlphaOutOfRange("alpha = " + std::to_string(alpha) + " outside [0,1]");

    CoupledSampleBatch batch;
    batch.alpha = alpha;
    batch.seed = rng.seed();

    Eigen::MatrixXd z1 = standard_normal_matrix(n, model.dim(), rng);
    batch.x_samples = z1 * model.sqrt_cov();
    batch.x_samples.rowwise() += model.mean().transpose();
    if (alpha == 1.0) {
        batch.y_samples = batch.x_samples;
        return batch;
    }
    Eigen::MatrixXd z2 = standard_normal_matrix(n, model.dim(), rng);
    double beta = std::sqrt(1.0 - alpha * alpha);
    batch.y_samples = (alpha * z1 + beta * z2) * model.sqrt_cov();
    batch.y_samples.rowwise() += model.mean().transpose();
    return batch;
}

}  // namespace gconc
