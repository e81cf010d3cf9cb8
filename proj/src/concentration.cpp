#include "gconc/concentration.hpp"

#include <cmath>

#include "gconc/errors.hpp"
#include "gconc/parallel.hpp"

namespace gconc {

namespace {

constexpr std::int64_t kChunkRows = 1 << 14;
const double kSqrtPiOver2Sqrt2 = std::sqrt(3.14159265358979323846) / (2.0 * std::sqrt(2.0));

double energy_at(const Eigen::MatrixXd& sigma, const ScalarField& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd g = f.gradient(x);
    double e = g.dot(sigma * g);
    if (!std::isfinite(e)) throw NonFiniteResult("energy seminorm not finite at the given point");
    return e;
}

// Central finite differences of the energy objective itself.
Eigen::VectorXd objective_gradient_fd(const Eigen::MatrixXd& sigma, const ScalarField& f,
                                      const Eigen::VectorXd& x) {
    double h = 1e-5 * (1.0 + x.norm());
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd p = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double xi = p[i];
        p[i] = xi + h;
        double up = energy_at(sigma, f, p);
        p[i] = xi - h;
        double dn = energy_at(sigma, f, p);
        p[i] = xi;
        g[i] = (up - dn) / (2.0 * h);
    }
    return g;
}

struct AscentResult {
    double value = -1.0;
    Eigen::VectorXd point;
};

AscentResult ascend(const Eigen::MatrixXd& sigma, const ScalarField& f, Eigen::VectorXd x,
                    const AscentConfig& config) {
    double value = energy_at(sigma, f, x);
    for (int step = 0; step < config.max_steps; ++step) {
        Eigen::VectorXd g = objective_gradient_fd(sigma, f, x);
        double gnorm = g.norm();
        if (gnorm < config.grad_tolerance) break;
        double s = 1.0;
        bool improved = false;
        while (s > 1e-16) {
            Eigen::VectorXd cand = x + s * g;
            double cv = energy_at(sigma, f, cand);
            if (cv > value) {
                x = std::move(cand);
                value = cv;
                improved = true;
                break;
            }
            s *= 0.5;
        }
        if (!improved) break;  // stalled below line-search resolution
    }
    return {value, std::move(x)};
}

SeminormEstimate sup_energy(const GaussianModel& model, const Eigen::MatrixXd& sigma,
                            const ScalarField& f, const AscentConfig& config, RngStream rng) {
    // Closed forms first.
    const ScalarField& core = f.core();
    if (core.is_linear()) {
        Eigen::VectorXd a = *core.linear_coefficients();
        SeminormEstimate est;
        est.witness = Eigen::VectorXd::Zero(f.dim());
        est.value = energy_at(sigma, f, est.witness);
        est.method = SeminormEstimate::Method::analytic;
        est.is_exact = true;
        return est;
    }
    if (core.is_max_coord()) {
        Eigen::Index imax = 0;
        sigma.diagonal().maxCoeff(&imax);
        SeminormEstimate est;
        // A point with a clear argmax whose value stays inside any truncation
        // window, so the one-hot gradient survives wrapping.
        est.witness = Eigen::VectorXd::Zero(f.dim());
        est.witness[imax] = 1e-3;
        est.value = energy_at(sigma, f, est.witness);
        est.method = SeminormEstimate::Method::analytic;
        est.is_exact = true;
        return est;
    }

    SeminormEstimate best;
    best.value = -1.0;
    best.method = config.starts > 0 ? SeminormEstimate::Method::multistart_ascent
                                    : SeminormEstimate::Method::random_search;
    best.is_exact = false;

    auto draw_start = [&](RngStream& stream) {
        Eigen::VectorXd z(model.dim());
        for (int i = 0; i < model.dim(); ++i) z[i] = stream.normal();
        return (model.mean() + 2.0 * (model.sqrt_cov() * z)).eval();
    };

    std::vector<AscentResult> results(static_cast<std::size_t>(std::max(0, config.starts)));
    parallel_for(results.size(), config.workers, [&](std::size_t k) {
        RngStream stream = rng.substream(k + 1);
        results[k] = ascend(sigma, f, draw_start(stream), config);
    });
    for (const AscentResult& r : results) {
        if (r.value > best.value) {
            best.value = r.value;
            best.witness = r.point;
        }
    }

    RngStream probe_stream = rng.substream(0);
    for (int p = 0; p < config.probes; ++p) {
        Eigen::VectorXd x = draw_start(probe_stream);
        double v = energy_at(sigma, f, x);
        if (v > best.value) {
            best.value = v;
            best.witness = x;
        }
    }
    if (best.value < 0.0) throw NonPositiveInput("seminorm search needs starts or probes");
    return best;
}

}  // namespace

double energy_seminorm_at(const GaussianModel& model, const ScalarField& f,
                          const Eigen::VectorXd& x) {
    return energy_at(model.cov(), f, x);
}

SeminormEstimate estimate_sup_seminorm(const GaussianModel& model, const ScalarField& f,
                                       const AscentConfig& config, RngStream rng) {
    return sup_energy(model, model.cov(), f, config, rng);
}

SeminormEstimate estimate_sup_gradient_norm_sq(const GaussianModel& model, const ScalarField& f,
                                               const AscentConfig& config, RngStream rng) {
    Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(model.dim(), model.dim());
    return sup_energy(model, identity, f, config, rng);
}

double tail_bound(double seminorm_sq, double x) {
    if (!(x > 0.0)) throw NonPositiveInput("deviation level x must be positive");
    if (!(seminorm_sq > 0.0)) throw NonPositiveInput("seminorm must be positive");
    return std::min(1.0, std::exp(-x * x / (2.0 * seminorm_sq)));
}

double improved_tail_bound(BoundKind kind, double seminorm_sq, double x,
                           const std::optional<MCEstimate>& mean_pos_part) {
    if (!(x > 0.0)) throw NonPositiveInput("deviation level x must be positive");
    if (!(seminorm_sq > 0.0)) throw NonPositiveInput("seminorm must be positive");
    double gauss = std::exp(-x * x / (2.0 * seminorm_sq));
    switch (kind) {
        case BoundKind::improved_mean:
            if (!mean_pos_part)
                throw MissingMeanPosPart("improved_mean bound needs an E(f-Ef)^+ estimate");
            return std::min(1.0, mean_pos_part->mean / x * gauss);
        case BoundKind::improved_const:
            return std::min(1.0, kSqrtPiOver2Sqrt2 / x * std::sqrt(seminorm_sq) * gauss);
        default:
            throw NonPositiveInput("improved_tail_bound expects an improved bound kind");
    }
}

double evaluate_bound(const BoundSpec& spec, double x) {
    switch (spec.kind) {
        case BoundKind::basic:
        case BoundKind::generic_lambda:
        case BoundKind::strong_moment:
            return tail_bound(spec.seminorm_sq, x);
        case BoundKind::improved_mean:
        case BoundKind::improved_const:
            return improved_tail_bound(spec.kind, spec.seminorm_sq, x, spec.mean_pos_part);
    }
    throw NonPositiveInput("unknown bound kind");
}

double mgf_bound(double seminorm_sq, double t) { return std::exp(t * t * seminorm_sq / 2.0); }

double chernoff_optimal_t(double seminorm_sq, double x) {
    if (!(x > 0.0)) throw NonPositiveInput("deviation level x must be positive");
    if (!(seminorm_sq > 0.0)) throw NonPositiveInput("seminorm must be positive");
    return x / seminorm_sq;
}

HerbstReport herbst_differential_check(const GaussianModel& model, const ScalarField& f,
                                       const std::vector<double>& t_grid, std::int64_t n,
                                       RngStream rng, int workers) {
    if (n < 2) throw NonPositiveInput("herbst check needs at least two samples");

    HerbstReport report;
    SeminormEstimate sem = estimate_sup_seminorm(model, f, AscentConfig{}, rng.substream(3));
    report.seminorm_sq = sem.value;
    report.seminorm_exact = sem.is_exact;

    std::int64_t n_chunks = (n + kChunkRows - 1) / kChunkRows;
    auto chunk_rows = [&](std::int64_t c) {
        return std::min<std::int64_t>(kChunkRows, n - c * kChunkRows);
    };

    // Independent centering estimate.
    {
        std::vector<StreamingMoments> partial(static_cast<std::size_t>(n_chunks));
        RngStream mean_stream = rng.substream(1);
        parallel_for(static_cast<std::size_t>(n_chunks), workers, [&](std::size_t c) {
            Eigen::MatrixXd x = sample_gaussian(model, chunk_rows(static_cast<std::int64_t>(c)),
                                                mean_stream.substream(c));
            StreamingMoments m;
            for (Eigen::Index i = 0; i < x.rows(); ++i) m.add(f.value(x.row(i).transpose()));
            partial[c] = m;
        });
        StreamingMoments total;
        for (const StreamingMoments& m : partial) total.merge(m);
        report.mean_estimate = estimate_from_moments(total, 0.95);
    }
    double center = report.mean_estimate.mean;

    // Shared batch for h and h' at every t.
    std::size_t n_t = t_grid.size();
    std::vector<std::vector<StreamingMoments>> exp_part(n_t), fexp_part(n_t), w_part(n_t);
    for (std::size_t j = 0; j < n_t; ++j) {
        exp_part[j].resize(static_cast<std::size_t>(n_chunks));
        fexp_part[j].resize(static_cast<std::size_t>(n_chunks));
        w_part[j].resize(static_cast<std::size_t>(n_chunks));
    }
    RngStream batch_stream = rng.substream(2);
    double s_sq = report.seminorm_sq;
    parallel_for(static_cast<std::size_t>(n_chunks), workers, [&](std::size_t c) {
        Eigen::MatrixXd x = sample_gaussian(model, chunk_rows(static_cast<std::int64_t>(c)),
                                            batch_stream.substream(c));
        std::vector<StreamingMoments> ex(n_t), fex(n_t), w(n_t);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double u = f.value(x.row(i).transpose()) - center;
            for (std::size_t j = 0; j < n_t; ++j) {
                double t = t_grid[j];
                double e = std::exp(t * u);
                ex[j].add(e);
                fex[j].add(u * e);
                w[j].add((u - t * s_sq) * e);
            }
        }
        for (std::size_t j = 0; j < n_t; ++j) {
            exp_part[j][c] = ex[j];
            fexp_part[j][c] = fex[j];
            w_part[j][c] = w[j];
        }
    });

    report.all_hold = true;
    for (std::size_t j = 0; j < n_t; ++j) {
        StreamingMoments me, mf, mw;
        for (std::int64_t c = 0; c < n_chunks; ++c) {
            me.merge(exp_part[j][static_cast<std::size_t>(c)]);
            mf.merge(fexp_part[j][static_cast<std::size_t>(c)]);
            mw.merge(w_part[j][static_cast<std::size_t>(c)]);
        }
        if (!std::isfinite(me.mean) || !std::isfinite(mf.mean))
            throw NonFiniteResult("e^{tf} moments overflow; lower t or the truncation level");
        HerbstPoint pt;
        pt.t = t_grid[j];
        pt.h = me.mean;
        pt.h_prime = mf.mean;
        pt.bound_rhs = pt.t * s_sq * pt.h;
        pt.std_error = std::sqrt(mw.variance() / static_cast<double>(mw.n));
        double margin = pt.h_prime - pt.bound_rhs;  // = mean of w
        pt.z_score = pt.std_error > 0.0 ? margin / pt.std_error : (margin > 0.0 ? HUGE_VAL : 0.0);
        pt.holds = margin <= 3.0 * pt.std_error;
        report.all_hold = report.all_hold && pt.holds;
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace gconc
