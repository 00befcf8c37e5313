#include "eig/synth.hpp"

#include <cmath>

namespace eig {

Vec gapped_spectrum(std::size_t d, double gap, double tail) {
    if (d < 1) throw DimensionError("spectrum needs d >= 1");
    if (!(gap > 0.0 && gap <= 1.0)) throw Error("gap must be in (0, 1]");
    Vec s(d, tail);
    s[0] = 1.0;
    if (d > 1) s[1] = 1.0 - gap;
    for (std::size_t i = 2; i < d; ++i)
        if (s[i] > s[1]) s[i] = s[1];
    return s;
}

std::vector<Vec> random_orthonormal_columns(std::size_t n, std::size_t k, Rng& rng) {
    if (k > n) throw DimensionError("cannot orthonormalize more columns than rows");
    std::vector<Vec> cols;
    cols.reserve(k);
    while (cols.size() < k) {
        Vec v = gaussian_vec(n, rng);
        for (const Vec& q : cols) axpy(-dot(q, v), q, v);
        const double nn = norm(v);
        if (nn <= 1e-8) continue; // essentially never for Gaussian draws
        scale(v, 1.0 / nn);
        cols.push_back(std::move(v));
    }
    return cols;
}

DataMatrix synth_instance(const SynthSpec& spec) {
    const std::size_t n = spec.n, d = spec.d;
    if (n < d) throw DimensionError("synth instance needs n >= d");
    if (spec.spectrum.size() != d) throw DimensionError("spectrum length must be d");
    for (std::size_t i = 0; i + 1 < d; ++i)
        if (spec.spectrum[i] < spec.spectrum[i + 1])
            throw Error("spectrum must be descending");
    if (spec.spectrum.back() < 0.0) throw Error("spectrum must be non-negative");

    Rng rng(spec.seed);
    auto p_cols = random_orthonormal_columns(n, d, rng); // n-vectors
    auto q_cols = random_orthonormal_columns(d, d, rng); // d-vectors

    // rows of A: A_{ij} = sum_k P_{ik} sqrt(s_k) Q_{jk}
    std::vector<Vec> rows(n, Vec(d, 0.0));
    for (std::size_t k = 0; k < d; ++k) {
        const double w = std::sqrt(spec.spectrum[k]);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = w * p_cols[k][i];
            if (c == 0.0) continue;
            axpy(c, q_cols[k], rows[i]);
        }
    }
    return DataMatrix::from_dense_rows(rows, d);
}

} // namespace eig
