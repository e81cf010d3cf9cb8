#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "gconc/expression.hpp"

namespace gconc {

enum class GradientMode { analytic, forward_autodiff, finite_difference };

/// A total function f: R^d -> R with a gradient (subgradient at kinks of
/// max/abs, lowest-index / sign-0 tie-break). Immutable and thread-safe.
class ScalarField {
public:
    static ScalarField linear(Eigen::VectorXd coefficients);
    static ScalarField max_coord(int dim);
    static ScalarField euclidean_norm(int dim);
    static ScalarField from_expression(ExpressionAST ast);
    static ScalarField parse(const std::string& text, int dim);

    int dim() const { return dim_; }
    GradientMode gradient_mode() const { return mode_; }
    ScalarField with_gradient_mode(GradientMode mode) const;

    double value(const Eigen::VectorXd& x) const;

    /// Gradient by the field's mode; throws NonFiniteResult on NaN/inf.
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

    /// Central finite differences with step 1e-5 * (1 + ||x||).
    Eigen::VectorXd gradient_finite_difference(const Eigen::VectorXd& x) const;

    bool is_linear() const;
    bool is_max_coord() const;
    /// Coefficients when linear, nullopt otherwise.
    std::optional<Eigen::VectorXd> linear_coefficients() const;
    /// Innermost non-truncated field (self when not truncated).
    const ScalarField& core() const;
    bool is_truncated() const;

    /// Human-readable form for reports ("max_coord", "linear([...])", the
    /// expression text, ...).
    const std::string& description() const { return description_; }

private:
    struct Linear {
        Eigen::VectorXd a;
    };
    struct MaxCoord {};
    struct EuclideanNorm {};
    struct Expr {
        std::shared_ptr<const ExpressionAST> ast;
    };
    struct Truncated {
        std::shared_ptr<const ScalarField> inner;
        double level;
    };
    using Body = std::variant<Linear, MaxCoord, EuclideanNorm, Expr, Truncated>;

    ScalarField(Body body, int dim, GradientMode mode, std::string description)
        : body_(std::move(body)), dim_(dim), mode_(mode), description_(std::move(description)) {}

    Eigen::VectorXd gradient_impl(const Eigen::VectorXd& x) const;

    friend ScalarField truncate(const ScalarField& field, double level);

    Body body_;
    int dim_;
    GradientMode mode_;
    std::string description_;
};

/// x -> clamp(f(x), -level, level); gradient is grad f where |f| < level and
/// zero elsewhere. Contracts pairwise differences and never enlarges the
/// energy seminorm.
ScalarField truncate(const ScalarField& field, double level);

/// One-hot gradient diagnostics for max_coord at x: (sum of partials,
/// sum of squared partials). Both are exactly 1 under the tie-break rule.
std::pair<double, double> max_coord_gradient_identity(int dim, const Eigen::VectorXd& x);

/// x -> e^{i<t,x>}; |value| = 1, gradient = i t e^{i<t,x>}.
struct ComplexExponentialField {
    Eigen::VectorXd frequency;

    std::complex<double> value(const Eigen::VectorXd& x) const;
    Eigen::VectorXcd gradient(const Eigen::VectorXd& x) const;
};

}  // namespace gconc
