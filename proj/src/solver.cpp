#include "eig/solver.hpp"

namespace eig {

namespace {

// Per-solve distribution builds are O(n); cheap next to any epoch, so no
// caching here — solver objects stay trivially shareable.
SamplingDistribution dist_for(const ShiftedOperator& B) {
    return build_sampling_distribution(B.matrix());
}

} // namespace

Vec SvrgSolver::solve(const ShiftedOperator& B, const Vec& b, const Vec& x_init,
                      int halvings, Rng& rng, SolverReport* report) {
    auto dist = dist_for(B);
    auto [x, rep] = solve_shifted_system(B, b, x_init, halvings, cfg_, dist, rng);
    if (report) report->merge(rep);
    return x;
}

Vec AcceleratedSolver::solve(const ShiftedOperator& B, const Vec& b,
                             const Vec& x_init, int halvings, Rng& rng,
                             SolverReport* report) {
    auto dist = dist_for(B);
    auto [x, rep] = accelerated_solve(B, b, x_init, halvings, cfg_, dist, rng);
    if (report) report->merge(rep);
    return x;
}

Vec DenseSolver::solve(const ShiftedOperator& B, const Vec& b, const Vec& /*x_init*/,
                       int /*halvings*/, Rng& /*rng*/, SolverReport* report) {
    if (cached_matrix_ != &B.matrix() || cached_lambda_ != B.shift() || !factor_) {
        factor_ = std::make_unique<CholeskyFactor>(dense_shifted(B.matrix(), B.shift()));
        cached_matrix_ = &B.matrix();
        cached_lambda_ = B.shift();
    }
    Vec x = factor_->solve(b);
    if (report) {
        report->epochs_run += 1;
        Vec res = shifted_apply(B, x);
        axpy(-1.0, b, res);
        report->final_b_norm_residual_proxy = norm(res);
    }
    return x;
}

std::unique_ptr<LinearSolver> make_solver(const std::string& name,
                                          const SvrgConfig& svrg_cfg,
                                          const AccelConfig& accel_cfg) {
    if (name == "svrg" || name == "plain") return std::make_unique<SvrgSolver>(svrg_cfg);
    if (name == "accelerated") return std::make_unique<AcceleratedSolver>(accel_cfg);
    if (name == "dense") return std::make_unique<DenseSolver>();
    throw Error("unknown solver: " + name);
}

} // namespace eig
