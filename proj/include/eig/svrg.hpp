#pragma once

#include <cstdint>
#include <utility>

#include "eig/shifted.hpp"

namespace eig {

/// Tuning knobs for the stochastic solver. Defaults are the faithful
/// constants (eta = 1/(8*S_bar), epoch cap 64*S_bar/mu); the pipeline
/// overrides them with cheaper practical values.
struct SvrgConfig {
    double eta_scale = 1.0; ///< eta = eta_scale / (8 * S_bar); must stay < 2
    double m_scale = 1.0;   ///< epoch cap m_max = ceil(m_scale * 64 * S_bar / mu)
    int epochs = 1;
    std::uint64_t seed = 0;

    /// Enforces eta * S_bar < 1/4 (the convergence expression needs
    /// 1 - 2*eta*S_bar > 0). Throws on violation.
    void validate() const;
};

/// Per-run telemetry shared by all solvers.
struct SolverReport {
    long long epochs_run = 0;
    long long inner_steps_total = 0;
    long long full_gradient_count = 0;
    long long outer_iterations = 0; ///< accelerated solver only
    bool gamma_floored = false;     ///< accelerated solver only
    double final_b_norm_residual_proxy = 0.0; ///< ||B x - b||_2 at exit

    void merge(const SolverReport& other);
};

/// Gradient of the i-th component psi_i(x) = 0.5 x^T (lambda*w_i*I - a_i a_i^T) x
/// - (1/n) b^T x with w_i = ||a_i||^2 / ||A||_F^2. The components sum to
/// f(x) = 0.5 x^T B x - b^T x.
Vec component_gradient(const DataMatrix& A, double lambda, std::size_t i,
                       const Vec& x, const Vec& b);

namespace detail {

/// One variance-reduced epoch on the quadratic with Hessian
/// lambda_eff*I - A^T A, anchored at x0 with precomputed full gradient g0.
/// Runs m-tilde inner steps, m-tilde uniform from {1..m_max}; returns the
/// random-stopping iterate. Importance sampling i ~ dist with step
/// x <- x - eta * [ (1/p_i)(grad_psi_i(x) - grad_psi_i(x0)) + g0 ].
Vec svrg_epoch_core(const DataMatrix& A, const SamplingDistribution& dist,
                    double lambda_eff, double eta, std::size_t m_max,
                    const Vec& x0, const Vec& g0, Rng& rng, SolverReport* report);

std::size_t epoch_cap(double m_scale, double s_bar, double mu);

} // namespace detail

/// One SVRG epoch for f(x) = 0.5 x^T B x - b^T x. Computes the anchor
/// gradient B x0 - b once, then runs the randomized inner loop.
/// Requires B to carry a lambda1 estimate (for mu and S_bar).
Vec svrg_epoch(const ShiftedOperator& B, const Vec& b, const Vec& x0,
               const SvrgConfig& cfg, const SamplingDistribution& dist, Rng& rng,
               SolverReport* report = nullptr);

/// `halvings` chained epochs; expected-error contract
/// E ||x - x*||_B^2 <= 2^-halvings * ||x_init - x*||_B^2.
std::pair<Vec, SolverReport> solve_shifted_system(const ShiftedOperator& B,
                                                  const Vec& b, const Vec& x_init,
                                                  int halvings, const SvrgConfig& cfg,
                                                  const SamplingDistribution& dist,
                                                  Rng& rng);

/// Optimal scaling of a unit vector x as an approximation to B^{-1} x:
/// returns x / (x^T B x). Throws on a non-positive quadratic form.
Vec warm_start_guess(const ShiftedOperator& B, const Vec& x);

} // namespace eig
