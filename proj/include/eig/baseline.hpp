#pragma once

#include "eig/power.hpp"

namespace eig {

/// Plain power method on A^T A from a random unit start; the bench-mode
/// comparison baseline.
EigenResult baseline_power_method(const DataMatrix& A, int iterations, Rng& rng);

} // namespace eig
