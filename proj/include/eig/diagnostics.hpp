#pragma once

#include "eig/shifted.hpp"

namespace eig {

/// x is (numerically) orthogonal to the top eigenvector: the potential is
/// infinite. Reported as its own condition rather than returning inf.
class OrthogonalToTopError : public Error {
public:
    explicit OrthogonalToTopError(const std::string& msg) : Error(msg) {}
};

/// Diagnostic potential G(x) = ||P_{v1-perp} x||_B / ||P_{v1} x||_B, the
/// B-norm tangent of the angle to v1. Needs the true top eigenvector, so it
/// is available to tests and instrumentation only, never to production runs.
/// Scale invariant in x.
inline double potential(const ShiftedOperator& B, const Vec& v1, const Vec& x) {
    require_dim(v1, B.matrix().cols(), "potential v1");
    require_dim(x, B.matrix().cols(), "potential x");
    const double a = dot(v1, x);
    if (std::abs(a) <= 1e-300 * (1.0 + norm(x)))
        throw OrthogonalToTopError("x is orthogonal to the top eigenvector");
    Vec tangent = x;
    axpy(-a, v1, tangent);
    // v1^T B v1 = lambda - lambda1 when v1 is exact
    const double mu = b_quadratic_form(B, v1);
    if (!(mu > 0.0))
        throw InvalidShiftError("potential: v1^T B v1 must be positive");
    return b_norm(B, tangent) / (std::abs(a) * std::sqrt(mu));
}

} // namespace eig
