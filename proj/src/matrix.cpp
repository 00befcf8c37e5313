#include "eig/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace eig {

DataMatrix::DataMatrix(std::size_t n_rows, std::size_t n_cols,
                       std::vector<std::size_t> row_offsets,
                       std::vector<std::size_t> col_indices,
                       std::vector<double> values)
    : n_(n_rows),
      d_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
    if (row_offsets_.size() != n_ + 1)
        throw DimensionError("row_offsets must have length n+1");
    if (col_indices_.size() != values_.size())
        throw DimensionError("col_indices and values length mismatch");
    if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size())
        throw DimensionError("row_offsets endpoints inconsistent with values");
    for (std::size_t i = 0; i < n_; ++i)
        if (row_offsets_[i] > row_offsets_[i + 1])
            throw DimensionError("row_offsets must be non-decreasing");
    for (std::size_t c : col_indices_)
        if (c >= d_) throw DimensionError("column index out of range");
    require_finite(values_, "matrix values");

    row_sq_norms_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            s += values_[k] * values_[k];
        row_sq_norms_[i] = s;
        frob_sq_ += s;
    }
}

DataMatrix DataMatrix::from_dense_rows(const std::vector<Vec>& rows, std::size_t n_cols) {
    std::vector<std::size_t> offs{0};
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    for (const Vec& r : rows) {
        require_dim(r, n_cols, "dense row");
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (r[j] != 0.0) {
                cols.push_back(j);
                vals.push_back(r[j]);
            }
        }
        offs.push_back(vals.size());
    }
    return DataMatrix(rows.size(), n_cols, std::move(offs), std::move(cols), std::move(vals));
}

double DataMatrix::row_dot(std::size_t i, const Vec& x) const {
    double s = 0.0;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        s += values_[k] * x[col_indices_[k]];
    return s;
}

void DataMatrix::row_axpy(std::size_t i, double alpha, Vec& y) const {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        y[col_indices_[k]] += alpha * values_[k];
}

Vec gram_apply(const DataMatrix& A, const Vec& x) {
    require_dim(x, A.cols(), "gram_apply input");
    Vec y(A.cols(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double ri = A.row_dot(i, x);
        if (ri != 0.0) A.row_axpy(i, ri, y);
    }
    return y;
}

double rayleigh_quotient(const DataMatrix& A, const Vec& x) {
    require_dim(x, A.cols(), "rayleigh_quotient input");
    double xx = norm_sq(x);
    if (xx == 0.0) throw Error("rayleigh_quotient of zero vector");
    double num = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double ri = A.row_dot(i, x);
        num += ri * ri;
    }
    return num / xx;
}

SamplingDistribution::SamplingDistribution(const DataMatrix& A) {
    if (A.frob_sq() <= 0.0)
        throw Error("cannot build sampling distribution for all-zero matrix");
    const std::size_t n = A.rows();
    probs_.resize(n);
    cumulative_.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        probs_[i] = A.row_sq_norm(i) / A.frob_sq();
        acc += probs_[i];
        cumulative_[i] = acc;
    }
    cumulative_.back() = 1.0;
}

std::size_t SamplingDistribution::sample(Rng& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i >= probs_.size()) i = probs_.size() - 1;
    // never return a zero row
    while (probs_[i] == 0.0 && i + 1 < probs_.size()) ++i;
    while (probs_[i] == 0.0 && i > 0) --i;
    return i;
}

SamplingDistribution build_sampling_distribution(const DataMatrix& A) {
    return SamplingDistribution(A);
}

} // namespace eig
