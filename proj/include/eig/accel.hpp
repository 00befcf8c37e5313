#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "eig/svrg.hpp"

namespace eig {

/// Configuration of the accelerated (approximate proximal point) solver.
struct AccelConfig {
    /// Regularizer weight; defaults to sqrt(d * lambda1 * ||A||_F^2 / nnz).
    /// Raised to the floor 2*(lambda - lambda1_hat) when the default falls
    /// below it (flagged in the report). gamma = 0 is the degenerate test
    /// mode that reproduces the plain solver.
    std::optional<double> gamma;
    double inner_progress_target = 0.0; ///< 0 => 4*((2*gamma+mu)/mu)^{3/2}
    int outer_iterations = 0;           ///< 0 => ceil(sqrt(ceil(gamma/mu)) * log c)
    double eta_scale = 1.0;
    double m_scale = 1.0;
    std::uint64_t seed = 0;
};

/// Gradient of the i-th component of the regularized objective
/// f_{gamma,x0}(x) = 0.5 x^T B x - b^T x + (gamma/2) ||x - x0||^2,
/// i.e. component_gradient plus (gamma * w_i) * (x - x0).
Vec regularized_component_gradient(const DataMatrix& A, double lambda, double gamma,
                                   std::size_t i, const Vec& x, const Vec& x0_anchor,
                                   const Vec& b);

/// SVRG on the regularized objective centered at x0_center, started from
/// x_start. Expected function-error reduction by factor c via ceil(log2 c)
/// epochs with mu_reg = mu + gamma and
/// S_bar_reg = (gamma^2 + 12*lambda1*||A||_F^2) / (2*(mu + gamma)).
Vec solve_regularized(const ShiftedOperator& B, double gamma, const Vec& b,
                      const Vec& x0_center, const Vec& x_start, double c,
                      const AccelConfig& cfg, const SamplingDistribution& dist,
                      Rng& rng, SolverReport* report = nullptr);

/// Same expected-halving contract as solve_shifted_system, via an outer
/// accelerated proximal-point loop (momentum extrapolation with
/// beta = (1 - sqrt(q))/(1 + sqrt(q)), q = mu/(mu + gamma)) whose inner step
/// is solve_regularized centered at the extrapolated point.
std::pair<Vec, SolverReport> accelerated_solve(const ShiftedOperator& B, const Vec& b,
                                               const Vec& x_init, int halvings,
                                               const AccelConfig& cfg,
                                               const SamplingDistribution& dist,
                                               Rng& rng);

/// Resolved gamma for an operator (default formula plus floor); exposed for
/// tests and reporting.
double resolve_gamma(const ShiftedOperator& B, const AccelConfig& cfg,
                     bool* floored = nullptr);

} // namespace eig
