#include "eig/power.hpp"

#include <algorithm>
#include <cmath>

namespace eig {

Vec random_unit_init(std::size_t d, Rng& rng) {
    if (d < 1) throw DimensionError("random_unit_init: d must be >= 1");
    Vec x = gaussian_vec(d, rng);
    while (norm(x) == 0.0) x = gaussian_vec(d, rng);
    normalize(x);
    return x;
}

Vec burn_in(const ShiftedOperator& B, const Vec& x0, int iterations,
            LinearSolver& solver, int halvings, Rng& rng, SolverReport* report) {
    if (iterations < 1) throw Error("burn_in: iterations must be >= 1");
    Vec x = x0;
    for (int t = 0; t < iterations; ++t) {
        Vec guess = warm_start_guess(B, x);
        x = solver.solve(B, x, guess, halvings, rng, report);
        normalize(x);
    }
    return x;
}

std::pair<Vec, bool> robust_power_iterate(
    const ShiftedOperator& B, const Vec& x, double lambda1_hat,
    LinearSolver& solver, const std::function<double(const Vec&)>& rq_estimator,
    int halvings, Rng& rng, SolverReport* report) {
    const double mu_hat = B.shift() - lambda1_hat;
    if (!(mu_hat > 0.0))
        throw InvalidShiftError("robust_power_iterate: shift must exceed lambda1_hat");

    Vec guess = warm_start_guess(B, x);
    Vec x_hat = solver.solve(B, x, guess, halvings, rng, report);

    const double nrm = norm(x_hat);
    if (!(nrm >= (2.0 / 3.0) / mu_hat)) return {x, false};
    Vec candidate = scaled(x_hat, 1.0 / nrm);
    if (!(rq_estimator(candidate) >= lambda1_hat - mu_hat / 6.0)) return {x, false};
    return {std::move(candidate), true};
}

std::optional<double> certify_alignment(double eps_q, double lambda1_hat,
                                        double gap_hat) {
    if (eps_q < 0.0) eps_q = 0.0;
    const double denom = lambda1_hat * gap_hat;
    if (!(denom > 0.0) || eps_q > denom) return std::nullopt;
    return std::sqrt(1.0 - eps_q / denom);
}

EigenResult top_eigenvector_offline(const DataMatrix& A, const PowerConfig& cfg) {
    if (!(cfg.target_epsilon > 0.0 && cfg.target_epsilon < 1.0))
        throw Error("target_epsilon must lie in (0, 1)");
    Rng rng(cfg.seed);
    EigenResult out;

    // --- shift acquisition ---------------------------------------------------
    double lambda1_hat, gap_hat, lambda_work;
    if (cfg.shift_override && cfg.lambda1_override && cfg.gap_override) {
        lambda_work = *cfg.shift_override;
        lambda1_hat = *cfg.lambda1_override;
        gap_hat = *cfg.gap_override;
    } else {
        ShiftSearchResult found = [&] {
            if (A.cols() <= 512) {
                DenseShiftedOracle oracle;
                return estimate_shift(A, cfg.shift, oracle, rng);
            }
            SvrgShiftedOracle oracle;
            return estimate_shift(A, cfg.shift, oracle, rng);
        }();
        lambda1_hat = found.lambda_tilde_1;
        gap_hat = std::max(found.gap_estimate(), 1e-12);
        lambda_work = lambda1_hat * (1.0 + cfg.shift_band_scale * gap_hat);
    }
    out.lambda1_estimate = lambda1_hat;
    out.gap_estimate = gap_hat;
    out.shift_used = lambda_work;

    ShiftedOperator B(A, lambda_work, lambda1_hat);
    const double mu_hat = lambda_work - lambda1_hat;

    // --- solver --------------------------------------------------------------
    SvrgConfig svrg_cfg;
    AccelConfig accel_cfg;
    if (!cfg.faithful_constants) {
        svrg_cfg.eta_scale = cfg.solver_eta_scale;
        svrg_cfg.m_scale = cfg.solver_m_scale;
        accel_cfg.eta_scale = cfg.solver_eta_scale;
        accel_cfg.m_scale = cfg.solver_m_scale;
    }
    auto solver = make_solver(cfg.solver_choice, svrg_cfg, accel_cfg);

    // --- burn-in -------------------------------------------------------------
    const double kappa_hat = lambda_work / mu_hat;
    int t_burn = cfg.burn_in_iterations;
    if (t_burn <= 0)
        t_burn = std::max(5, static_cast<int>(std::ceil(
                                 cfg.burn_in_constant *
                                 (std::log(static_cast<double>(A.cols())) +
                                  std::log(kappa_hat)))));
    Vec x = random_unit_init(A.cols(), rng);
    x = burn_in(B, x, t_burn, *solver, cfg.burn_in_halvings, rng, &out.report);
    out.burn_in_iterations = t_burn;

    // --- warm accept/reject loop --------------------------------------------
    // target potential: G^2 * mu <= margin * eps * lambda1
    const double g_target = std::sqrt(0.05 * cfg.target_epsilon * lambda1_hat / mu_hat);
    const double g0 = 1.0 / std::sqrt(10.0);
    const double contraction = cfg.shift_band_scale / (cfg.shift_band_scale + 1.0);
    int accepted_target = cfg.warm_iterations;
    if (accepted_target <= 0) {
        const double by_contraction =
            std::log(g0 / std::min(g_target, g0)) / std::log(1.0 / contraction);
        accepted_target = static_cast<int>(std::ceil(by_contraction)) + 1;
    }
    const int budget = accepted_target + cfg.extra_rejection_budget;

    auto exact_rq = [&](const Vec& v) { return rayleigh_quotient(A, v); };
    int accepted = 0;
    for (int it = 0; it < budget && accepted < accepted_target; ++it) {
        const double c1 = g0 * std::pow(0.2, accepted);
        const double c1_eff = std::max(c1, g_target / 5.0);
        int halvings =
            static_cast<int>(std::ceil(std::log2(1.0 / (c1_eff * c1_eff)))) + 2;
        halvings = std::max(halvings, 2);
        auto [next, ok] = robust_power_iterate(B, x, lambda1_hat, *solver, exact_rq,
                                               halvings, rng, &out.report);
        x = std::move(next);
        out.warm_iterations_run += 1;
        if (cfg.warm_observer) cfg.warm_observer(it, x, ok, out.report);
        if (ok)
            ++accepted;
        else
            out.rejected_count += 1;
    }
    out.accepted_count = accepted;

    out.vector = std::move(x);
    normalize(out.vector);
    out.rayleigh = rayleigh_quotient(A, out.vector);

    const double lambda1_run = std::max(lambda1_hat, out.rayleigh);
    const double eps_q = std::max(lambda1_run - out.rayleigh, 0.0);
    out.alignment_lower_bound = certify_alignment(eps_q, lambda1_run, gap_hat);
    out.converged = accepted >= accepted_target &&
                    eps_q <= cfg.target_epsilon * lambda1_run;
    if (!out.converged) {
        out.diagnostics = "warm loop ended with " + std::to_string(accepted) + "/" +
                          std::to_string(accepted_target) +
                          " accepted iterations; residual Rayleigh error " +
                          std::to_string(eps_q);
    }
    return out;
}

} // namespace eig
