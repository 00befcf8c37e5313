#pragma once

#include <vector>

#include "eig/matrix.hpp"

namespace eig {

/// Minimal dense symmetric-matrix helpers. Kept deliberately small: the
/// library never forms A^T A except for the direct shift-estimation solver
/// (d <= 512) and the small-instance test oracles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * c_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * c_ + j]; }

    Vec apply(const Vec& x) const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<double> data_;
};

/// Dense d x d Gram matrix A^T A.
DenseMatrix dense_gram(const DataMatrix& A);

/// Dense lambda*I - A^T A.
DenseMatrix dense_shifted(const DataMatrix& A, double lambda);

/// Cholesky factorization of an SPD matrix; throws InvalidShiftError when the
/// matrix is not positive definite.
class CholeskyFactor {
public:
    explicit CholeskyFactor(const DenseMatrix& M);
    Vec solve(const Vec& b) const;

private:
    std::size_t d_;
    std::vector<double> lower_; // row-major lower triangle
};

struct DenseEigDecomposition {
    Vec values;                  // descending
    std::vector<Vec> vectors;    // vectors[i] pairs with values[i], unit norm
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix (d <= 512).
DenseEigDecomposition jacobi_eigensym(const DenseMatrix& M, double tol = 1e-13,
                                      int max_sweeps = 64);

} // namespace eig
