#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eig/vec.hpp"

namespace eig {

/// Sparse row-major matrix A. Rows are the sampling unit for the stochastic
/// solvers, so CSR storage is forced by the algorithm. Immutable after
/// construction; safe to share across threads.
class DataMatrix {
public:
    /// Build from CSR arrays. Validates structure, recomputes row norms.
    DataMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices,
               std::vector<double> values);

    /// Build from dense rows (test and generator convenience; zeros dropped).
    static DataMatrix from_dense_rows(const std::vector<Vec>& rows, std::size_t n_cols);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    std::size_t nnz() const { return values_.size(); }

    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<std::size_t>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    double row_sq_norm(std::size_t i) const { return row_sq_norms_[i]; }
    const std::vector<double>& row_sq_norms() const { return row_sq_norms_; }

    /// ||A||_F^2
    double frob_sq() const { return frob_sq_; }

    /// Stable rank ||A||_F^2 / lambda1 given an estimate of the top eigenvalue.
    double stable_rank(double lambda1) const { return frob_sq_ / lambda1; }

    /// a_i . x over the sparse row i.
    double row_dot(std::size_t i, const Vec& x) const;

    /// y += alpha * a_i
    void row_axpy(std::size_t i, double alpha, Vec& y) const;

private:
    std::size_t n_ = 0, d_ = 0;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
    std::vector<double> row_sq_norms_;
    double frob_sq_ = 0.0;
};

/// y = A^T A x via two sparse passes; never materializes A^T A.
Vec gram_apply(const DataMatrix& A, const Vec& x);

/// ||A x||^2 / ||x||^2 for x != 0.
double rayleigh_quotient(const DataMatrix& A, const Vec& x);

/// Row sampling distribution p_i = ||a_i||^2 / ||A||_F^2 with an inverse-CDF
/// table for O(log n) draws. Zero rows get p_i = 0 and are never sampled.
class SamplingDistribution {
public:
    explicit SamplingDistribution(const DataMatrix& A);

    const std::vector<double>& probabilities() const { return probs_; }
    double probability(std::size_t i) const { return probs_[i]; }

    /// Draw a row index (binary search over the cumulative table).
    std::size_t sample(Rng& rng) const;

private:
    std::vector<double> probs_;
    std::vector<double> cumulative_;
};

SamplingDistribution build_sampling_distribution(const DataMatrix& A);

} // namespace eig
