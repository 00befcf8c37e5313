#pragma once

#include <optional>

#include "eig/matrix.hpp"

namespace eig {

/// The implicit PSD operator B = lambda*I - A^T A. Holds a reference to the
/// matrix; immutable and shareable. lambda1_hint, when present, must lie
/// strictly below lambda (otherwise B is not positive definite).
class ShiftedOperator {
public:
    ShiftedOperator(const DataMatrix& A, double lambda,
                    std::optional<double> lambda1_hint = std::nullopt);

    const DataMatrix& matrix() const { return *A_; }
    double shift() const { return lambda_; }
    const std::optional<double>& lambda1_hint() const { return lambda1_hint_; }

    /// Strong convexity mu = lambda - lambda1_hint. Requires the hint.
    double strong_convexity() const;

    /// Smoothness S-bar = 2*lambda1*||A||_F^2 / (lambda - lambda1), using the
    /// hint for lambda1 in the numerator (lambda itself when absent, which is
    /// an upper bound and only shrinks the step size).
    double smoothness() const;

private:
    const DataMatrix* A_;
    double lambda_;
    std::optional<double> lambda1_hint_;
};

/// lambda*x - A^T A x
Vec shifted_apply(const ShiftedOperator& B, const Vec& x);

/// x^T B x (throws InvalidShiftError on a negative quadratic form).
double b_quadratic_form(const ShiftedOperator& B, const Vec& x);

/// sqrt(x^T B x)
double b_norm(const ShiftedOperator& B, const Vec& x);

} // namespace eig
