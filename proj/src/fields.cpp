#include "gconc/fields.hpp"

#include <cmath>

#include "gconc/errors.hpp"

namespace gconc {

namespace {

void check_dim(const ScalarField& f, const Eigen::VectorXd& x) {
    if (x.size() != f.dim())
        throw DimensionMismatch("point has length " + std::to_string(x.size()) +
                                ", field expects " + std::to_string(f.dim()));
}

int lowest_argmax(const Eigen::VectorXd& x) {
    int best = 0;
    for (int i = 1; i < x.size(); ++i)
        if (x[i] > x[best]) best = i;
    return best;
}

std::string format_linear(const Eigen::VectorXd& a) {
    std::string s = "linear(";
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (i) s += ", ";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%g", a[i]);
        s += buf;
    }
    return s + ")";
}

}  // namespace

ScalarField ScalarField::linear(Eigen::VectorXd coefficients) {
    if (coefficients.size() < 1) throw NonPositiveInput("linear field needs coefficients");
    int d = static_cast<int>(coefficients.size());
    std::string desc = format_linear(coefficients);
    return ScalarField(Linear{std::move(coefficients)}, d, GradientMode::analytic, desc);
}

ScalarField ScalarField::max_coord(int dim) {
    if (dim < 1) throw NonPositiveInput("dimension must be >= 1");
    return ScalarField(MaxCoord{}, dim, GradientMode::analytic, "max_coord");
}

ScalarField ScalarField::euclidean_norm(int dim) {
    if (dim < 1) throw NonPositiveInput("dimension must be >= 1");
    return ScalarField(EuclideanNorm{}, dim, GradientMode::analytic, "euclidean_norm");
}

ScalarField ScalarField::from_expression(ExpressionAST ast) {
    int d = ast.dim();
    std::string desc = ast.print();
    return ScalarField(Expr{std::make_shared<const ExpressionAST>(std::move(ast))}, d,
                       GradientMode::forward_autodiff, desc);
}

ScalarField ScalarField::parse(const std::string& text, int dim) {
    return from_expression(parse_expression_ast(text, dim));
}

ScalarField ScalarField::with_gradient_mode(GradientMode mode) const {
    ScalarField copy = *this;
    copy.mode_ = mode;
    return copy;
}

double ScalarField::value(const Eigen::VectorXd& x) const {
    check_dim(*this, x);
    if (const auto* lin = std::get_if<Linear>(&body_)) return lin->a.dot(x);
    if (std::holds_alternative<MaxCoord>(body_)) return x.maxCoeff();
    if (std::holds_alternative<EuclideanNorm>(body_)) return x.norm();
    if (const auto* e = std::get_if<Expr>(&body_)) return e->ast->evaluate(x);
    const auto& t = std::get<Truncated>(body_);
    return std::clamp(t.inner->value(x), -t.level, t.level);
}

Eigen::VectorXd ScalarField::gradient_impl(const Eigen::VectorXd& x) const {
    if (const auto* lin = std::get_if<Linear>(&body_)) return lin->a;
    if (std::holds_alternative<MaxCoord>(body_)) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
        g[lowest_argmax(x)] = 1.0;
        return g;
    }
    if (std::holds_alternative<EuclideanNorm>(body_)) {
        double r = x.norm();
        if (r == 0.0) return Eigen::VectorXd::Zero(dim_);  // subgradient pick
        return x / r;
    }
    if (const auto* e = std::get_if<Expr>(&body_)) return e->ast->gradient(x);
    const auto& t = std::get<Truncated>(body_);
    if (std::abs(t.inner->value(x)) < t.level) return t.inner->gradient(x);
    return Eigen::VectorXd::Zero(dim_);
}

Eigen::VectorXd ScalarField::gradient(const Eigen::VectorXd& x) const {
    check_dim(*this, x);
    Eigen::VectorXd g = mode_ == GradientMode::finite_difference ? gradient_finite_difference(x)
                                                                 : gradient_impl(x);
    if (!g.allFinite()) throw NonFiniteResult("gradient not finite at the given point");
    return g;
}

Eigen::VectorXd ScalarField::gradient_finite_difference(const Eigen::VectorXd& x) const {
    check_dim(*this, x);
    double h = 1e-5 * (1.0 + x.norm());
    Eigen::VectorXd g(dim_);
    Eigen::VectorXd p = x;
    for (int i = 0; i < dim_; ++i) {
        double xi = p[i];
        p[i] = xi + h;
        double up = value(p);
        p[i] = xi - h;
        double dn = value(p);
        p[i] = xi;
        g[i] = (up - dn) / (2.0 * h);
    }
    return g;
}

bool ScalarField::is_linear() const { return std::holds_alternative<Linear>(body_); }
bool ScalarField::is_max_coord() const { return std::holds_alternative<MaxCoord>(body_); }

std::optional<Eigen::VectorXd> ScalarField::linear_coefficients() const {
    if (const auto* lin = std::get_if<Linear>(&body_)) return lin->a;
    return std::nullopt;
}

const ScalarField& ScalarField::core() const {
    if (const auto* t = std::get_if<Truncated>(&body_)) return t->inner->core();
    return *this;
}

bool ScalarField::is_truncated() const { return std::holds_alternative<Truncated>(body_); }

ScalarField truncate(const ScalarField& field, double level) {
    if (!(level > 0.0)) throw NonPositiveInput("truncation level must be positive");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", level);
    std::string desc = "truncate(" + field.description() + ", " + buf + ")";
    return ScalarField(ScalarField::Truncated{std::make_shared<const ScalarField>(field), level},
                       field.dim(), field.gradient_mode(), desc);
}

std::pair<double, double> max_coord_gradient_identity(int dim, const Eigen::VectorXd& x) {
    Eigen::VectorXd g = ScalarField::max_coord(dim).gradient(x);
    return {g.sum(), g.squaredNorm()};
}

std::complex<double> ComplexExponentialField::value(const Eigen::VectorXd& x) const {
    return std::exp(std::complex<double>(0.0, frequency.dot(x)));
}

Eigen::VectorXcd ComplexExponentialField::gradient(const Eigen::VectorXd& x) const {
    return std::complex<double>(0.0, 1.0) * value(x) * frequency.cast<std::complex<double>>();
}

}  // namespace gconc
