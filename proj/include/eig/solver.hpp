#pragma once

#include <memory>
#include <string>

#include "eig/accel.hpp"
#include "eig/dense.hpp"
#include "eig/svrg.hpp"

namespace eig {

/// Approximate application of B^{-1}: solve B x = b from x_init, halving the
/// expected squared B-norm error `halvings` times. Implementations own their
/// tuning config; PRNG state belongs to the caller.
class LinearSolver {
public:
    virtual ~LinearSolver() = default;
    virtual Vec solve(const ShiftedOperator& B, const Vec& b, const Vec& x_init,
                      int halvings, Rng& rng, SolverReport* report = nullptr) = 0;
    virtual std::string name() const = 0;
};

/// Plain SVRG with importance sampling.
class SvrgSolver final : public LinearSolver {
public:
    explicit SvrgSolver(SvrgConfig cfg = {}) : cfg_(cfg) {}
    Vec solve(const ShiftedOperator& B, const Vec& b, const Vec& x_init, int halvings,
              Rng& rng, SolverReport* report = nullptr) override;
    std::string name() const override { return "svrg"; }

private:
    SvrgConfig cfg_;
};

/// Accelerated proximal-point solver.
class AcceleratedSolver final : public LinearSolver {
public:
    explicit AcceleratedSolver(AccelConfig cfg = {}) : cfg_(cfg) {}
    Vec solve(const ShiftedOperator& B, const Vec& b, const Vec& x_init, int halvings,
              Rng& rng, SolverReport* report = nullptr) override;
    std::string name() const override { return "accelerated"; }

private:
    AccelConfig cfg_;
};

/// Exact dense solver (Cholesky on the materialized shifted matrix); the
/// oracle used by shift estimation and tests. Caches the factorization per
/// (matrix, shift) pair. d <= 512.
class DenseSolver final : public LinearSolver {
public:
    Vec solve(const ShiftedOperator& B, const Vec& b, const Vec& x_init, int halvings,
              Rng& rng, SolverReport* report = nullptr) override;
    std::string name() const override { return "dense"; }

private:
    const DataMatrix* cached_matrix_ = nullptr;
    double cached_lambda_ = 0.0;
    std::unique_ptr<CholeskyFactor> factor_;
};

/// Factory from a CLI-facing name ("svrg" | "plain" | "accelerated" | "dense").
std::unique_ptr<LinearSolver> make_solver(const std::string& name,
                                          const SvrgConfig& svrg_cfg,
                                          const AccelConfig& accel_cfg);

} // namespace eig
