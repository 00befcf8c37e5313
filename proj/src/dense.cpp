#include "eig/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eig {

Vec DenseMatrix::apply(const Vec& x) const {
    require_dim(x, c_, "dense apply input");
    Vec y(r_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c_; ++j) s += data_[i * c_ + j] * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix dense_gram(const DataMatrix& A) {
    const std::size_t d = A.cols();
    DenseMatrix G(d, d);
    const auto& offs = A.row_offsets();
    const auto& cols = A.col_indices();
    const auto& vals = A.values();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t k = offs[i]; k < offs[i + 1]; ++k)
            for (std::size_t l = offs[i]; l < offs[i + 1]; ++l)
                G(cols[k], cols[l]) += vals[k] * vals[l];
    }
    return G;
}

DenseMatrix dense_shifted(const DataMatrix& A, double lambda) {
    DenseMatrix B = dense_gram(A);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            B(i, j) = (i == j ? lambda : 0.0) - B(i, j);
    return B;
}

CholeskyFactor::CholeskyFactor(const DenseMatrix& M) : d_(M.rows()) {
    if (M.rows() != M.cols()) throw DimensionError("Cholesky needs a square matrix");
    lower_.assign(d_ * d_, 0.0);
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = M(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower_[i * d_ + k] * lower_[j * d_ + k];
            if (i == j) {
                if (s <= 0.0)
                    throw InvalidShiftError("matrix not positive definite in Cholesky");
                lower_[i * d_ + i] = std::sqrt(s);
            } else {
                lower_[i * d_ + j] = s / lower_[j * d_ + j];
            }
        }
    }
}

Vec CholeskyFactor::solve(const Vec& b) const {
    require_dim(b, d_, "Cholesky rhs");
    Vec y(d_);
    for (std::size_t i = 0; i < d_; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= lower_[i * d_ + k] * y[k];
        y[i] = s / lower_[i * d_ + i];
    }
    Vec x(d_);
    for (std::size_t ii = d_; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < d_; ++k) s -= lower_[k * d_ + ii] * x[k];
        x[ii] = s / lower_[ii * d_ + ii];
    }
    return x;
}

DenseEigDecomposition jacobi_eigensym(const DenseMatrix& M, double tol, int max_sweeps) {
    if (M.rows() != M.cols()) throw DimensionError("jacobi needs a square matrix");
    const std::size_t d = M.rows();
    if (d > 512) throw Error("jacobi oracle limited to d <= 512");

    DenseMatrix A = M;
    DenseMatrix V(d, d);
    for (std::size_t i = 0; i < d; ++i) V(i, i) = 1.0;

    double scale = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (scale == 0.0) scale = 1.0;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off = std::max(off, std::abs(A(p, q)));
        if (off <= tol * scale) break;

        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps) throw Error("jacobi did not converge within sweep budget");

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return A(a, a) > A(b, b); });

    DenseEigDecomposition out;
    out.values.resize(d);
    out.vectors.resize(d);
    for (std::size_t r = 0; r < d; ++r) {
        out.values[r] = A(order[r], order[r]);
        Vec v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = V(k, order[r]);
        normalize(v);
        out.vectors[r] = std::move(v);
    }
    return out;
}

} // namespace eig
