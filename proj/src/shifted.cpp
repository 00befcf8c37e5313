#include "eig/shifted.hpp"

#include <cmath>

namespace eig {

ShiftedOperator::ShiftedOperator(const DataMatrix& A, double lambda,
                                 std::optional<double> lambda1_hint)
    : A_(&A), lambda_(lambda), lambda1_hint_(lambda1_hint) {
    if (!std::isfinite(lambda)) throw Error("shift must be finite");
    if (lambda1_hint_ && !(lambda_ > *lambda1_hint_))
        throw InvalidShiftError("shift lambda must exceed the lambda1 estimate");
}

double ShiftedOperator::strong_convexity() const {
    if (!lambda1_hint_)
        throw Error("strong_convexity requires a lambda1 estimate on the operator");
    return lambda_ - *lambda1_hint_;
}

double ShiftedOperator::smoothness() const {
    double lam1 = lambda1_hint_ ? *lambda1_hint_ : lambda_;
    return 2.0 * lam1 * A_->frob_sq() / strong_convexity();
}

Vec shifted_apply(const ShiftedOperator& B, const Vec& x) {
    require_dim(x, B.matrix().cols(), "shifted_apply input");
    Vec y = gram_apply(B.matrix(), x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = B.shift() * x[i] - y[i];
    return y;
}

double b_quadratic_form(const ShiftedOperator& B, const Vec& x) {
    require_dim(x, B.matrix().cols(), "b_norm input");
    double q = B.shift() * norm_sq(x);
    const DataMatrix& A = B.matrix();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double ri = A.row_dot(i, x);
        q -= ri * ri;
    }
    return q;
}

double b_norm(const ShiftedOperator& B, const Vec& x) {
    double q = b_quadratic_form(B, x);
    if (q < 0.0) {
        // tolerate roundoff at the scale of the quadratic form terms
        double scale = B.shift() * norm_sq(x);
        if (q > -1e-12 * (scale + 1.0)) return 0.0;
        throw InvalidShiftError("negative quadratic form: shift does not exceed lambda1");
    }
    return std::sqrt(q);
}

} // namespace eig
