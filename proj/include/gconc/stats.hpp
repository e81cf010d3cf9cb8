#pragma once

#include <cstdint>
#include <span>

namespace gconc {

/// Monte Carlo estimate with normal-theory confidence interval.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
    double ci_level = 0.95;
    double ci_half_width = 0.0;
};

/// Running mean / second central moment, mergeable in index order
/// (Chan et al. pairwise update) so chunked reductions stay deterministic.
struct StreamingMoments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const StreamingMoments& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        double delta = other.mean - mean;
        std::int64_t total = n + other.n;
        mean += delta * static_cast<double>(other.n) / static_cast<double>(total);
        m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) /
                             static_cast<double>(total);
        n = total;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

/// Two-sided standard normal quantile: z with P(|Z| <= z) = level.
double normal_quantile_two_sided(double level);

double normal_cdf(double x);

/// Upper tail P(Z >= x), erfc-based.
double normal_tail(double x);

MCEstimate estimate_from_moments(const StreamingMoments& m, double ci_level);

/// Estimate with an externally supplied standard error (quadrature-combined,
/// jackknife, ...).
MCEstimate estimate_with_std_error(double mean, double std_error, std::int64_t n, double ci_level);

struct BinomialInterval {
    double lower = 0.0;
    double upper = 1.0;
};

/// Exact (Clopper-Pearson) two-sided interval for k successes out of n.
BinomialInterval clopper_pearson(std::int64_t k, std::int64_t n, double level);

/// Delta-method standard error for Cov(f,g) = mean(fg) - mean(f)mean(g) by
/// leave-one-block-out jackknife over `blocks` contiguous blocks.
double jackknife_covariance_std_error(std::span<const double> f_values,
                                      std::span<const double> g_values, int blocks);

/// FNV-1a 64-bit hash (report/config fingerprints).
std::uint64_t fnv1a64(std::span<const char> bytes);

}  // namespace gconc
