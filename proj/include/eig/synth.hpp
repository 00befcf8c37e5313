#pragma once

#include <cstdint>

#include "eig/matrix.hpp"

namespace eig {

/// Synthetic instance spec: A is n x d (n >= d) with A^T A having exactly the
/// given spectrum (descending, non-negative) in a random orientation.
struct SynthSpec {
    std::size_t n = 0;
    std::size_t d = 0;
    Vec spectrum; ///< length d, descending, entries >= 0
    std::uint64_t seed = 0;
};

/// Convenience spectrum: lambda1 = 1, lambda2 = 1 - gap, the remaining d - 2
/// eigenvalues at `tail` (small stable rank keeps the solvers cheap).
Vec gapped_spectrum(std::size_t d, double gap, double tail = 0.01);

/// A = P * sqrt(D) * Q^T with Haar-ish orthonormal P (n x d) and Q (d x d).
DataMatrix synth_instance(const SynthSpec& spec);

/// Random n x k matrix with orthonormal columns (Gram-Schmidt on a Gaussian).
std::vector<Vec> random_orthonormal_columns(std::size_t n, std::size_t k, Rng& rng);

} // namespace eig
