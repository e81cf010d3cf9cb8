#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace gconc {

/// Forward-mode dual number carrying a full gradient vector, so one
/// evaluation pass yields value and all d partials.
struct Dual {
    double v = 0.0;
    Eigen::VectorXd g;

    static Dual constant(double c, Eigen::Index dim) { return {c, Eigen::VectorXd::Zero(dim)}; }
    static Dual variable(double x, Eigen::Index dim, Eigen::Index i) {
        Dual d{x, Eigen::VectorXd::Zero(dim)};
        d.g[i] = 1.0;
        return d;
    }
};

inline Dual operator-(const Dual& a) { return {-a.v, -a.g}; }
inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, b.v * a.g + a.v * b.g};
}
inline Dual operator/(const Dual& a, const Dual& b) {
    double inv = 1.0 / b.v;
    return {a.v * inv, (a.g - (a.v * inv) * b.g) * inv};
}

inline Dual exp(const Dual& a) {
    double e = std::exp(a.v);
    return {e, e * a.g};
}
inline Dual log(const Dual& a) { return {std::log(a.v), a.g / a.v}; }
inline Dual sqrt(const Dual& a) {
    double s = std::sqrt(a.v);
    return {s, a.g / (2.0 * s)};
}
inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.g}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.g}; }
inline Dual tanh(const Dual& a) {
    double t = std::tanh(a.v);
    return {t, (1.0 - t * t) * a.g};
}

// Subgradient convention at 0: slope 0.
inline Dual abs(const Dual& a) {
    if (a.v > 0.0) return a;
    if (a.v < 0.0) return -a;
    return {0.0, Eigen::VectorXd::Zero(a.g.size())};
}

/// a^c with constant exponent; valid for a.v <= 0 when c behaves like an
/// integer power there (matches std::pow semantics for the value).
inline Dual pow(const Dual& a, double c) {
    return {std::pow(a.v, c), c * std::pow(a.v, c - 1.0) * a.g};
}

inline Dual pow(const Dual& a, const Dual& b) {
    double v = std::pow(a.v, b.v);
    return {v, v * (std::log(a.v) * b.g + (b.v / a.v) * a.g)};
}

}  // namespace gconc
