#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gconc/fields.hpp"
#include "gconc/gaussian.hpp"
#include "gconc/rng.hpp"
#include "gconc/stats.hpp"

namespace gconc {

/// Best found value of sup_x <grad f(x), Sigma grad f(x)> with its witness.
/// Unless is_exact, the value is a certified lower bound on the true sup and
/// downstream tail bounds may be optimistic.
struct SeminormEstimate {
    double value = 0.0;
    Eigen::VectorXd witness;
    enum class Method { analytic, multistart_ascent, random_search } method = Method::analytic;
    bool is_exact = false;
};

struct AscentConfig {
    int starts = 64;          // initial points drawn from N(mu, 4 Sigma)
    int max_steps = 500;
    int probes = 10000;       // plain random evaluations on top of ascent
    double grad_tolerance = 1e-9;
    int workers = 1;
};

/// <grad f(x), Sigma grad f(x)> = ||Sigma^{1/2} grad f(x)||^2.
double energy_seminorm_at(const GaussianModel& model, const ScalarField& f,
                          const Eigen::VectorXd& x);

/// Exact for linear fields and for max_coord (one-hot gradients reach every
/// diagonal entry, so the sup is the largest one); otherwise multi-start
/// gradient ascent with finite-difference objective gradients plus random
/// probes. Truncated fields delegate to the inner field when that one is
/// exact.
SeminormEstimate estimate_sup_seminorm(const GaussianModel& model, const ScalarField& f,
                                       const AscentConfig& config, RngStream rng);

/// Same search applied to ||grad f(x)||^2 (identity matrix in place of
/// Sigma); feeds the generic lambda* bound.
SeminormEstimate estimate_sup_gradient_norm_sq(const GaussianModel& model, const ScalarField& f,
                                               const AscentConfig& config, RngStream rng);

/// min(1, exp(-x^2 / (2 seminorm_sq))).
double tail_bound(double seminorm_sq, double x);

enum class BoundKind { basic, improved_mean, improved_const, generic_lambda, strong_moment };

struct BoundSpec {
    BoundKind kind = BoundKind::basic;
    double seminorm_sq = 0.0;
    std::optional<MCEstimate> mean_pos_part;  // E(f - Ef)^+ for improved_mean
};

/// improved_mean: (E(f-Ef)^+ / x) * exp(-x^2/(2 s^2));
/// improved_const: (sqrt(pi) / (2 sqrt(2) x)) * s * exp(-x^2/(2 s^2)).
/// Both capped at 1.
double improved_tail_bound(BoundKind kind, double seminorm_sq, double x,
                           const std::optional<MCEstimate>& mean_pos_part);

double evaluate_bound(const BoundSpec& spec, double x);

/// exp(t^2 seminorm_sq / 2).
double mgf_bound(double seminorm_sq, double t);

/// t* = x / seminorm_sq, the minimizer of exp(-t x) * mgf_bound(t); plugging
/// back reproduces tail_bound exactly.
double chernoff_optimal_t(double seminorm_sq, double x);

struct HerbstPoint {
    double t = 0.0;
    double h = 0.0;        // E e^{t f~}, f~ centered
    double h_prime = 0.0;  // E f~ e^{t f~}
    double bound_rhs = 0.0;
    double std_error = 0.0;  // of h' - t s^2 h, shared batch
    double z_score = 0.0;
    bool holds = false;
};

struct HerbstReport {
    double seminorm_sq = 0.0;
    bool seminorm_exact = false;
    MCEstimate mean_estimate;
    std::vector<HerbstPoint> points;
    bool all_hold = false;
};

/// Checks h'(t) <= t s^2 h(t) + 3 se at each grid point, with h and h'
/// estimated from one shared batch so common noise cancels. The field is
/// centered by an independent Monte Carlo estimate of its mean; callers
/// truncate unbounded fields first.
HerbstReport herbst_differential_check(const GaussianModel& model, const ScalarField& f,
                                       const std::vector<double>& t_grid, std::int64_t n,
                                       RngStream rng, int workers = 1);

}  // namespace gconc
