#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "eig/dense.hpp"
#include "eig/svrg.hpp"

namespace eig {

struct ShiftSearchConfig {
    double alpha = 200.0;    ///< block-power accuracy parameter; must exceed 100
    double t_constant = 8.0; ///< t = ceil(t_constant * alpha * log d)
    int max_iterations = 64; ///< hard cap; exceeding it signals gap ~ 0
};

struct ShiftIterationRecord {
    double lambda_bar;
    double lambda_tilde_1;
    double lambda_tilde_2;
};

struct ShiftSearchResult {
    double lambda_bar;     ///< final shift, in ((1+gap/120)*l1, (1+gap/8)*l1]
    double lambda_tilde_1; ///< final top-eigenvalue estimate
    double lambda_tilde_2;
    int iterations = 0;
    std::vector<ShiftIterationRecord> history;

    double gap_estimate() const {
        return (lambda_tilde_1 - lambda_tilde_2) / lambda_tilde_1;
    }
};

/// Two-column randomized block power estimate of the top two eigenvalues of a
/// self-adjoint PSD operator given by its application. Draws a Gaussian d x 2
/// block, applies the operator t times with modified Gram-Schmidt after each
/// application, then solves the projected 2 x 2 problem. Resamples once on a
/// rank-deficient block, then fails.
std::pair<double, double> eig_estimate_block(
    const std::function<Vec(const Vec&)>& apply, std::size_t d, int t, Rng& rng);

/// Inner linear-system oracle for the shift search: applies (lambda*I - A^T A)^{-1}.
/// set_shift must reject shifts at or below the top eigenvalue.
class ShiftedInverseOracle {
public:
    virtual ~ShiftedInverseOracle() = default;
    virtual void set_shift(const DataMatrix& A, double lambda,
                           std::optional<double> lambda1_hint) = 0;
    virtual Vec apply_inverse(const Vec& w, Rng& rng) = 0;
    virtual std::string name() const = 0;
};

/// Direct dense variant (Cholesky, cached per shift; d <= 512). Isolates the
/// search logic from stochastic solver noise; the default for the pipeline.
class DenseShiftedOracle final : public ShiftedInverseOracle {
public:
    void set_shift(const DataMatrix& A, double lambda,
                   std::optional<double> lambda1_hint) override;
    Vec apply_inverse(const Vec& w, Rng& rng) override;
    std::string name() const override { return "dense"; }

private:
    std::unique_ptr<CholeskyFactor> factor_;
};

/// Stochastic variant: each application is a solve_shifted_system run with
/// enough halvings for relative B-norm tolerance ~tol.
class SvrgShiftedOracle final : public ShiftedInverseOracle {
public:
    explicit SvrgShiftedOracle(SvrgConfig cfg = {}, double tol = 1e-8);
    void set_shift(const DataMatrix& A, double lambda,
                   std::optional<double> lambda1_hint) override;
    Vec apply_inverse(const Vec& w, Rng& rng) override;
    std::string name() const override { return "svrg"; }

private:
    SvrgConfig cfg_;
    double tol_;
    int halvings_ = 1;
    const DataMatrix* A_ = nullptr;
    double lambda_ = 0.0;
    std::optional<double> hint_;
    std::unique_ptr<SamplingDistribution> dist_;
};

/// Shrinking-shift search: start from a block-power overestimate
/// lambda_bar_0 = (3/2) * lambda_tilde_0,1, then repeatedly estimate the top
/// two eigenvalues of (lambda_bar*I - A^T A)^{-1}, convert via
/// lambda_tilde_j = lambda_bar - 1/lambda_hat_j, and move
/// lambda_bar <- (lambda_tilde_1 + lambda_bar)/2. Continues while
/// lambda_bar - lambda_tilde_1 >= (1/10)(lambda_bar - lambda_tilde_2) and
/// stops once the shift is within a tenth of the (estimated) gap above the
/// top eigenvalue. Throws BudgetExceededError when the cap is hit (gap ~ 0).
ShiftSearchResult estimate_shift(const DataMatrix& A, const ShiftSearchConfig& cfg,
                                 ShiftedInverseOracle& oracle, Rng& rng);

} // namespace eig
