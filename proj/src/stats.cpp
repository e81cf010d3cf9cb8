#include "gconc/stats.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "gconc/errors.hpp"

namespace gconc {

double normal_quantile_two_sided(double level) {
    if (!(level > 0.0 && level < 1.0)) throw NonPositiveInput("ci level must lie in (0,1)");
    boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, 0.5 * (1.0 + level));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

MCEstimate estimate_from_moments(const StreamingMoments& m, double ci_level) {
    MCEstimate e;
    e.mean = m.mean;
    e.n = m.n;
    e.ci_level = ci_level;
    e.std_error = m.n > 1 ? std::sqrt(m.variance() / static_cast<double>(m.n)) : 0.0;
    e.ci_half_width = normal_quantile_two_sided(ci_level) * e.std_error;
    return e;
}

MCEstimate estimate_with_std_error(double mean, double std_error, std::int64_t n, double ci_level) {
    MCEstimate e;
    e.mean = mean;
    e.std_error = std_error;
    e.n = n;
    e.ci_level = ci_level;
    e.ci_half_width = normal_quantile_two_sided(ci_level) * std_error;
    return e;
}

BinomialInterval clopper_pearson(std::int64_t k, std::int64_t n, double level) {
    if (n <= 0) throw NonPositiveInput("clopper_pearson: n must be positive");
    if (k < 0 || k > n) throw NonPositiveInput("clopper_pearson: k out of range");
    double alpha = 1.0 - level;
    BinomialInterval ci;
    if (k == 0) {
        ci.lower = 0.0;
    } else {
        boost::math::beta_distribution<double> lo(static_cast<double>(k),
                                                  static_cast<double>(n - k + 1));
        ci.lower = boost::math::quantile(lo, alpha / 2.0);
    }
    if (k == n) {
        ci.upper = 1.0;
    } else {
        boost::math::beta_distribution<double> hi(static_cast<double>(k + 1),
                                                  static_cast<double>(n - k));
        ci.upper = boost::math::quantile(hi, 1.0 - alpha / 2.0);
    }
    return ci;
}

double jackknife_covariance_std_error(std::span<const double> f_values,
                                      std::span<const double> g_values, int blocks) {
    std::size_t n = f_values.size();
    if (n != g_values.size()) throw DimensionMismatch("jackknife: f and g sample counts differ");
    if (blocks < 2 || static_cast<std::size_t>(blocks) > n)
        throw NonPositiveInput("jackknife: need 2 <= blocks <= n");

    double sum_f = 0.0, sum_g = 0.0, sum_fg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_f += f_values[i];
        sum_g += g_values[i];
        sum_fg += f_values[i] * g_values[i];
    }

    std::vector<double> theta(static_cast<std::size_t>(blocks));
    double theta_bar = 0.0;
    for (int b = 0; b < blocks; ++b) {
        std::size_t lo = n * static_cast<std::size_t>(b) / static_cast<std::size_t>(blocks);
        std::size_t hi = n * static_cast<std::size_t>(b + 1) / static_cast<std::size_t>(blocks);
        double bf = 0.0, bg = 0.0, bfg = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            bf += f_values[i];
            bg += g_values[i];
            bfg += f_values[i] * g_values[i];
        }
        double m = static_cast<double>(n - (hi - lo));
        double mean_f = (sum_f - bf) / m;
        double mean_g = (sum_g - bg) / m;
        theta[static_cast<std::size_t>(b)] = (sum_fg - bfg) / m - mean_f * mean_g;
        theta_bar += theta[static_cast<std::size_t>(b)];
    }
    theta_bar /= static_cast<double>(blocks);

    double ss = 0.0;
    for (double t : theta) ss += (t - theta_bar) * (t - theta_bar);
    double var = ss * static_cast<double>(blocks - 1) / static_cast<double>(blocks);
    return std::sqrt(var);
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace gconc
