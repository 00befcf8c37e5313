#include "eig/shift_estimate.hpp"

#include <cmath>

namespace eig {

namespace {

/// Modified Gram-Schmidt on a 2-column block, in place. When the second
/// column collapses into the span of the first (a rank-one operator, or
/// contraction past machine precision), it is restarted from a fresh random
/// direction: the projected value then under-estimates the second eigenvalue,
/// which is exactly the degenerate answer we want (e.g. 0 for rank one).
/// Returns false only when the first column itself is numerically zero.
bool mgs2(Vec& q1, Vec& q2, Rng& rng) {
    const double n1 = norm(q1);
    if (n1 <= 1e-300) return false;
    scale(q1, 1.0 / n1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const double before = norm(q2);
        axpy(-dot(q1, q2), q1, q2);
        const double after = norm(q2);
        if (after > 1e-12 * (before + 1e-300)) {
            scale(q2, 1.0 / after);
            return true;
        }
        q2 = gaussian_vec(q1.size(), rng);
    }
    return false;
}

/// Eigenvalues of the symmetric 2x2 [[a, c], [c, b]], descending.
std::pair<double, double> eig2x2(double a, double b, double c) {
    const double mean = 0.5 * (a + b);
    const double r = std::hypot(0.5 * (a - b), c);
    return {mean + r, mean - r};
}

} // namespace

std::pair<double, double> eig_estimate_block(
    const std::function<Vec(const Vec&)>& apply, std::size_t d, int t, Rng& rng) {
    if (d == 0) throw DimensionError("eig_estimate_block: empty dimension");
    if (t < 1) throw Error("eig_estimate_block: t must be >= 1");

    if (d == 1) {
        Vec e{1.0};
        const double v = apply(e)[0];
        return {v, v};
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
        Vec q1 = gaussian_vec(d, rng);
        Vec q2 = gaussian_vec(d, rng);
        if (!mgs2(q1, q2, rng)) continue;
        bool ok = true;
        for (int s = 0; s < t; ++s) {
            q1 = apply(q1);
            q2 = apply(q2);
            if (!mgs2(q1, q2, rng)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        const Vec z1 = apply(q1);
        const Vec z2 = apply(q2);
        const double a = dot(q1, z1);
        const double b = dot(q2, z2);
        const double c = 0.5 * (dot(q1, z2) + dot(q2, z1));
        return eig2x2(a, b, c);
    }
    throw Error("eig_estimate_block: operator annihilated the block");
}

void DenseShiftedOracle::set_shift(const DataMatrix& A, double lambda,
                                   std::optional<double> /*lambda1_hint*/) {
    factor_ = std::make_unique<CholeskyFactor>(dense_shifted(A, lambda));
}

Vec DenseShiftedOracle::apply_inverse(const Vec& w, Rng& /*rng*/) {
    if (!factor_) throw Error("oracle shift not set");
    return factor_->solve(w);
}

SvrgShiftedOracle::SvrgShiftedOracle(SvrgConfig cfg, double tol)
    : cfg_(cfg), tol_(tol) {
    // 2^-halvings on the squared B-norm error reaches relative tolerance tol
    halvings_ = static_cast<int>(std::ceil(std::log2(1.0 / (tol_ * tol_))));
    if (halvings_ < 1) halvings_ = 1;
}

void SvrgShiftedOracle::set_shift(const DataMatrix& A, double lambda,
                                  std::optional<double> lambda1_hint) {
    if (!lambda1_hint)
        throw Error("svrg shifted oracle requires a lambda1 hint for its step size");
    A_ = &A;
    lambda_ = lambda;
    hint_ = lambda1_hint;
    dist_ = std::make_unique<SamplingDistribution>(A);
}

Vec SvrgShiftedOracle::apply_inverse(const Vec& w, Rng& rng) {
    if (!A_) throw Error("oracle shift not set");
    ShiftedOperator B(*A_, lambda_, hint_);
    Vec x0(w.size(), 0.0);
    auto [x, rep] = solve_shifted_system(B, w, x0, halvings_, cfg_, *dist_, rng);
    return x;
}

ShiftSearchResult estimate_shift(const DataMatrix& A, const ShiftSearchConfig& cfg,
                                 ShiftedInverseOracle& oracle, Rng& rng) {
    if (!(cfg.alpha > 100.0)) throw Error("shift search requires alpha > 100");
    const std::size_t d = A.cols();
    const int t = static_cast<int>(std::ceil(
        cfg.t_constant * cfg.alpha * std::log(static_cast<double>(std::max<std::size_t>(d, 2)))));

    // stage 0: crude overestimate from the block power method on A^T A itself
    auto gram = [&](const Vec& x) { return gram_apply(A, x); };
    auto [t0_1, t0_2] = eig_estimate_block(gram, d, t, rng);
    if (!(t0_1 > 0.0)) throw Error("shift search: top eigenvalue estimate not positive");

    ShiftSearchResult out;
    double lambda_bar = 1.5 * t0_1;
    double tilde1 = t0_1, tilde2 = t0_2;
    out.history.push_back({lambda_bar, tilde1, tilde2});

    for (int i = 1; i <= cfg.max_iterations; ++i) {
        oracle.set_shift(A, lambda_bar, tilde1);
        auto inv = [&](const Vec& w) { return oracle.apply_inverse(w, rng); };
        auto [hat1, hat2] = eig_estimate_block(inv, d, t, rng);
        if (!(hat1 > 0.0) || !(hat2 > 0.0))
            throw InvalidShiftError(
                "shift search: inverse operator estimate not positive definite");
        tilde1 = lambda_bar - 1.0 / hat1;
        tilde2 = lambda_bar - 1.0 / hat2;
        lambda_bar = 0.5 * (tilde1 + lambda_bar);
        out.history.push_back({lambda_bar, tilde1, tilde2});
        out.iterations = i;

        if (lambda_bar - tilde1 < 0.1 * (lambda_bar - tilde2)) {
            out.lambda_bar = lambda_bar;
            out.lambda_tilde_1 = tilde1;
            out.lambda_tilde_2 = tilde2;
            return out;
        }
    }
    throw BudgetExceededError(
        "shift search exhausted its iteration budget; the eigengap is too small to "
        "separate the top two eigenvalues");
}

} // namespace eig
