#include "eig/accel.hpp"

#include <cmath>

namespace eig {

Vec regularized_component_gradient(const DataMatrix& A, double lambda, double gamma,
                                   std::size_t i, const Vec& x, const Vec& x0_anchor,
                                   const Vec& b) {
    Vec g = component_gradient(A, lambda, i, x, b);
    if (gamma != 0.0) {
        const double w = A.row_sq_norm(i) / A.frob_sq();
        for (std::size_t j = 0; j < g.size(); ++j)
            g[j] += gamma * w * (x[j] - x0_anchor[j]);
    }
    return g;
}

double resolve_gamma(const ShiftedOperator& B, const AccelConfig& cfg, bool* floored) {
    if (floored) *floored = false;
    if (cfg.gamma && *cfg.gamma == 0.0) return 0.0; // degenerate test mode
    const DataMatrix& A = B.matrix();
    const double lam1 = B.lambda1_hint() ? *B.lambda1_hint() : B.shift();
    double g = cfg.gamma ? *cfg.gamma
                         : std::sqrt(static_cast<double>(A.cols()) * lam1 *
                                     A.frob_sq() / static_cast<double>(A.nnz()));
    const double floor = 2.0 * B.strong_convexity();
    if (g < floor) {
        g = floor;
        if (floored) *floored = true;
    }
    return g;
}

Vec solve_regularized(const ShiftedOperator& B, double gamma, const Vec& b,
                      const Vec& x0_center, const Vec& x_start, double c,
                      const AccelConfig& cfg, const SamplingDistribution& dist,
                      Rng& rng, SolverReport* report) {
    if (!(c > 1.0)) throw Error("progress target c must exceed 1");
    if (!(gamma >= 0.0)) throw Error("gamma must be non-negative");
    if (!(cfg.eta_scale > 0.0 && cfg.eta_scale < 2.0))
        throw Error("eta_scale must lie in (0, 2)");

    const DataMatrix& A = B.matrix();
    require_dim(b, A.cols(), "solve_regularized b");
    require_dim(x0_center, A.cols(), "solve_regularized center");

    const double mu = B.strong_convexity();
    const double mu_reg = mu + gamma;
    const double lam1 = B.lambda1_hint() ? *B.lambda1_hint() : B.shift();
    // gamma = 0 degenerates to the plain solver's constants exactly
    const double s_bar_reg =
        gamma == 0.0 ? B.smoothness()
                     : (gamma * gamma + 12.0 * lam1 * A.frob_sq()) / (2.0 * mu_reg);
    const double eta = cfg.eta_scale / (8.0 * s_bar_reg);
    const std::size_t m_max = detail::epoch_cap(cfg.m_scale, s_bar_reg, mu_reg);
    const int epochs = static_cast<int>(std::ceil(std::log2(c)));

    Vec x = x_start;
    for (int e = 0; e < epochs; ++e) {
        // anchor gradient of the regularized objective at the epoch start
        Vec g0 = shifted_apply(B, x);
        for (std::size_t j = 0; j < g0.size(); ++j)
            g0[j] += gamma * (x[j] - x0_center[j]) - b[j];
        if (report) report->full_gradient_count += 1;
        x = detail::svrg_epoch_core(A, dist, B.shift() + gamma, eta, m_max, x, g0,
                                    rng, report);
    }
    return x;
}

std::pair<Vec, SolverReport> accelerated_solve(const ShiftedOperator& B, const Vec& b,
                                               const Vec& x_init, int halvings,
                                               const AccelConfig& cfg,
                                               const SamplingDistribution& dist,
                                               Rng& rng) {
    if (halvings < 1) throw Error("halvings must be >= 1");
    SolverReport report;
    bool floored = false;
    const double gamma = resolve_gamma(B, cfg, &floored);
    report.gamma_floored = floored;

    const double c_total = std::pow(2.0, halvings);
    Vec x_cur = x_init;

    if (gamma == 0.0) {
        // single outer iteration; reproduces solve_shifted_system bit for bit
        x_cur = solve_regularized(B, 0.0, b, x_cur, x_cur, c_total, cfg, dist, rng,
                                  &report);
        report.outer_iterations = 1;
    } else {
        const double mu = B.strong_convexity();
        const double c_in = cfg.inner_progress_target > 1.0
                                ? cfg.inner_progress_target
                                : 4.0 * std::pow((2.0 * gamma + mu) / mu, 1.5);
        int t_out = cfg.outer_iterations;
        if (t_out <= 0)
            t_out = static_cast<int>(std::ceil(std::sqrt(std::ceil(gamma / mu)) *
                                               std::log(c_total)));
        if (t_out < 1) t_out = 1;

        const double q = mu / (mu + gamma);
        const double beta = (1.0 - std::sqrt(q)) / (1.0 + std::sqrt(q));

        Vec x_prev = x_cur;
        for (int t = 0; t < t_out; ++t) {
            Vec y = x_cur;
            for (std::size_t j = 0; j < y.size(); ++j)
                y[j] += beta * (x_cur[j] - x_prev[j]);
            Vec x_next =
                solve_regularized(B, gamma, b, y, y, c_in, cfg, dist, rng, &report);
            x_prev = std::move(x_cur);
            x_cur = std::move(x_next);
            report.outer_iterations += 1;
        }
    }

    Vec res = shifted_apply(B, x_cur);
    axpy(-1.0, b, res);
    report.final_b_norm_residual_proxy = norm(res);
    return {std::move(x_cur), report};
}

} // namespace eig
