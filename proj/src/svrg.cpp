#include "eig/svrg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eig {

void SvrgConfig::validate() const {
    if (!(eta_scale > 0.0)) throw Error("eta_scale must be positive");
    if (!(m_scale > 0.0)) throw Error("m_scale must be positive");
    if (epochs < 1) throw Error("epochs must be >= 1");
    if (!(eta_scale < 2.0))
        throw Error("eta_scale must be < 2 so that eta * S_bar < 1/4");
}

void SolverReport::merge(const SolverReport& other) {
    epochs_run += other.epochs_run;
    inner_steps_total += other.inner_steps_total;
    full_gradient_count += other.full_gradient_count;
    outer_iterations += other.outer_iterations;
    gamma_floored = gamma_floored || other.gamma_floored;
    final_b_norm_residual_proxy = other.final_b_norm_residual_proxy;
}

Vec component_gradient(const DataMatrix& A, double lambda, std::size_t i,
                       const Vec& x, const Vec& b) {
    if (i >= A.rows()) throw Error("component index out of range");
    require_dim(x, A.cols(), "component_gradient x");
    require_dim(b, A.cols(), "component_gradient b");
    const double w = A.row_sq_norm(i) / A.frob_sq();
    const double inv_n = 1.0 / static_cast<double>(A.rows());
    Vec g(A.cols());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = lambda * w * x[j] - inv_n * b[j];
    A.row_axpy(i, -A.row_dot(i, x), g);
    return g;
}

namespace detail {

std::size_t epoch_cap(double m_scale, double s_bar, double mu) {
    double m = std::ceil(m_scale * 64.0 * s_bar / mu);
    if (!(m >= 1.0)) return 1;
    double cap = 9.0e15; // stay well inside exact integer doubles
    return static_cast<std::size_t>(std::min(m, cap));
}

Vec svrg_epoch_core(const DataMatrix& A, const SamplingDistribution& dist,
                    double lambda_eff, double eta, std::size_t m_max,
                    const Vec& x0, const Vec& g0, Rng& rng, SolverReport* report) {
    const std::size_t d = A.cols();
    const std::size_t n = A.rows();
    require_dim(x0, d, "svrg epoch x0");
    require_dim(g0, d, "svrg epoch anchor gradient");

    // a_i . x0 for every row, so the inner loop never touches x0's rows twice
    Vec row_anchor(n);
    for (std::size_t i = 0; i < n; ++i) row_anchor[i] = A.row_dot(i, x0);

    std::uniform_int_distribution<std::size_t> pick_m(1, m_max);
    const std::size_t m_tilde = pick_m(rng);

    Vec x = x0;
    double* xp = x.data();
    const double* x0p = x0.data();
    const double* g0p = g0.data();
    for (std::size_t k = 0; k < m_tilde; ++k) {
        const std::size_t i = dist.sample(rng);
        const double corr = A.row_dot(i, x) - row_anchor[i];
        for (std::size_t j = 0; j < d; ++j)
            xp[j] -= eta * (lambda_eff * (xp[j] - x0p[j]) + g0p[j]);
        A.row_axpy(i, eta * corr / dist.probability(i), x);
    }
    require_finite(x, "svrg epoch output");

    if (report) {
        report->epochs_run += 1;
        report->inner_steps_total += static_cast<long long>(m_tilde);
    }
    return x;
}

} // namespace detail

Vec svrg_epoch(const ShiftedOperator& B, const Vec& b, const Vec& x0,
               const SvrgConfig& cfg, const SamplingDistribution& dist, Rng& rng,
               SolverReport* report) {
    cfg.validate();
    require_dim(b, B.matrix().cols(), "svrg_epoch b");
    const double mu = B.strong_convexity();
    const double s_bar = B.smoothness();
    const double eta = cfg.eta_scale / (8.0 * s_bar);
    const std::size_t m_max = detail::epoch_cap(cfg.m_scale, s_bar, mu);

    Vec g0 = shifted_apply(B, x0);
    axpy(-1.0, b, g0);
    if (report) report->full_gradient_count += 1;

    return detail::svrg_epoch_core(B.matrix(), dist, B.shift(), eta, m_max, x0, g0,
                                   rng, report);
}

std::pair<Vec, SolverReport> solve_shifted_system(const ShiftedOperator& B,
                                                  const Vec& b, const Vec& x_init,
                                                  int halvings, const SvrgConfig& cfg,
                                                  const SamplingDistribution& dist,
                                                  Rng& rng) {
    if (halvings < 1) throw Error("halvings must be >= 1");
    SolverReport report;
    Vec x = x_init;
    for (int h = 0; h < halvings; ++h) x = svrg_epoch(B, b, x, cfg, dist, rng, &report);

    Vec res = shifted_apply(B, x);
    axpy(-1.0, b, res);
    report.final_b_norm_residual_proxy = norm(res);
    return {std::move(x), report};
}

Vec warm_start_guess(const ShiftedOperator& B, const Vec& x) {
    const double q = b_quadratic_form(B, x);
    if (!(q > 0.0))
        throw InvalidShiftError("warm_start_guess needs a positive quadratic form");
    return scaled(x, 1.0 / q);
}

} // namespace eig
