#pragma once

#include <functional>
#include <optional>
#include <string>

#include "eig/shift_estimate.hpp"
#include "eig/solver.hpp"

namespace eig {

struct PowerConfig {
    double target_epsilon = 1e-6; ///< relative Rayleigh error target
    std::string solver_choice = "svrg"; ///< svrg | accelerated | dense
    std::uint64_t seed = 0;

    /// lambda_work = lambda1_hat * (1 + shift_band_scale * gap_hat). The
    /// contraction per exact iteration is roughly band/(band+1).
    double shift_band_scale = 0.5;

    int burn_in_iterations = 0;   ///< 0 => ceil(c*(log d + log kappa_hat))
    double burn_in_constant = 1.5;
    int burn_in_halvings = 3;
    int warm_iterations = 0;      ///< 0 => derived from the error schedule
    int extra_rejection_budget = 6;

    /// Faithful solver constants (eta_scale = m_scale = 1) instead of the
    /// cheaper practical defaults below.
    bool faithful_constants = false;
    double solver_eta_scale = 1.0;
    double solver_m_scale = 0.5;

    /// Invoked after every warm iteration (trace emission); may be empty.
    std::function<void(int iteration, const Vec& iterate, bool accepted,
                       const SolverReport& progress)>
        warm_observer;

    ShiftSearchConfig shift;
    /// Supplying all three skips shift estimation entirely.
    std::optional<double> shift_override;
    std::optional<double> lambda1_override;
    std::optional<double> gap_override;
};

struct EigenResult {
    Vec vector;           ///< unit norm
    double rayleigh = 0.0;
    std::optional<double> alignment_lower_bound;
    double shift_used = 0.0;
    double lambda1_estimate = 0.0;
    double gap_estimate = 0.0;
    int burn_in_iterations = 0;
    int warm_iterations_run = 0;
    int accepted_count = 0;
    int rejected_count = 0;
    bool converged = false;
    long long samples_consumed = 0; ///< online runs only
    std::string diagnostics; ///< non-empty when converged is false
    SolverReport report;
};

/// Normalized standard Gaussian direction.
Vec random_unit_init(std::size_t d, Rng& rng);

/// Plain approximate inverse iterations x <- solve(B, x)/||solve(B, x)||,
/// driving a random start toward the top eigenvector of B^{-1}.
Vec burn_in(const ShiftedOperator& B, const Vec& x0, int iterations,
            LinearSolver& solver, int halvings, Rng& rng,
            SolverReport* report = nullptr);

/// One guarded power iteration: solve from the warm-start guess, then accept
/// only if the Rayleigh estimate stays within (lambda - lambda1_hat)/6 of
/// lambda1_hat AND the un-normalized output keeps norm >= (2/3)/(lambda -
/// lambda1_hat). On rejection the old iterate is returned unchanged.
std::pair<Vec, bool> robust_power_iterate(
    const ShiftedOperator& B, const Vec& x, double lambda1_hat,
    LinearSolver& solver, const std::function<double(const Vec&)>& rq_estimator,
    int halvings, Rng& rng, SolverReport* report = nullptr);

/// Certified |v1^T x| lower bound sqrt(1 - eps_q/(lambda1_hat*gap_hat)), or
/// nullopt when the Rayleigh error is too large to certify anything.
std::optional<double> certify_alignment(double eps_q, double lambda1_hat,
                                        double gap_hat);

/// Full offline pipeline: shift estimation, burn-in, then the accept/reject
/// warm loop with the geometric per-iteration solver error schedule
/// c1(i) = (1/sqrt(10)) * 5^-i.
EigenResult top_eigenvector_offline(const DataMatrix& A, const PowerConfig& cfg);

} // namespace eig
