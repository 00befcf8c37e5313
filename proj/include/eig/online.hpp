#pragma once

#include <optional>

#include "eig/power.hpp"
#include "eig/stream.hpp"

namespace eig {

/// Constants of the streaming solver; see the per-operation docs for how the
/// batch sizes derive from them.
struct StreamSolverConfig {
    double c2 = 1.0 / 44.0;
    double c3 = 1.0 / 20.0;
    double rq_batch_constant = 20.0; ///< m_rq = ceil(c * log(1/p)) batches
};

/// Median-of-means estimate of x^T E[aa^T] x from k*m fresh samples:
/// k = ceil(4 * nvar / eps^2) samples per batch, m = ceil(c * log(1/p))
/// batches; returns the median batch mean of (a^T x)^2. Guarantee:
/// |z - x^T Sigma x| <= eps * lambda1 with probability 1 - p.
double estimate_rayleigh_online(SampleStream& stream, const Vec& x, double eps,
                                double p, const StreamSolverConfig& cfg = {});

/// One streaming variance-reduced iteration for
/// f(x) = 0.5 x^T (lambda*I - Sigma) x - b^T x: anchor gradient from k fresh
/// samples, then m-tilde (uniform from {1..m}) inner steps on fresh samples
/// with effective step size eta_eff:
///   x <- x - eta_eff * [ lambda*(x - x0) - a (a^T (x - x0)) + g0 ].
Vec ssvrg_iter(SampleStream& stream, const Vec& x0, double eta_eff, long long k,
               long long m, double lambda, const Vec& b, Rng& rng);

/// No-initial-error streaming solver: from x0 = 0, stages with
/// eta_eff = c2/8, m = ceil(S_bar/(mu*c2^2)),
/// k = max(ceil(S_bar/(mu*c2)), ceil(nvar*lambda1^2/(mu^2*c3_stage))) where
/// S_bar = lambda + nvar*lambda1^2/mu. The per-stage error target
/// c3_stage = max(c3, 2^-j/20) tightens geometrically, the last stage
/// dominating the sample cost; final contract E||x - x*||_B^2 <=
/// 10*c3*lambda1(B^{-1}). sample_cap, when set, shrinks the batch sizes
/// proportionally so the stage plan fits the budget.
Vec streaming_solve(SampleStream& stream, double lambda, double lambda1_hat,
                    const Vec& b, double c3, const StreamSolverConfig& cfg, Rng& rng,
                    std::optional<long long> sample_cap = std::nullopt);

struct OnlinePowerConfig {
    StreamSolverConfig solver;
    double target_epsilon = 0.01;
    double delta = 0.1;
    int max_iterations = 0; ///< 0 => derived from the error schedule
    std::optional<long long> sample_budget;
    double rq_budget_share = 0.15; ///< fraction of each iteration's samples
                                   ///< spent on the Rayleigh estimate
};

/// Online warm-start power method: robust accept/reject iterations whose
/// solver is streaming_solve at c3 = c1(i)^2 and whose Rayleigh test is the
/// median-of-means estimator. x0_warm must already satisfy the warm-start
/// contract G <= 1/sqrt(10) (not checkable without v1).
EigenResult top_eigenvector_online(SampleStream& stream, const Vec& x0_warm,
                                   double lambda, double lambda1_hat,
                                   const OnlinePowerConfig& cfg, Rng& rng);

} // namespace eig
