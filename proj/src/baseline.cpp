#include "eig/baseline.hpp"

namespace eig {

EigenResult baseline_power_method(const DataMatrix& A, int iterations, Rng& rng) {
    if (iterations < 1) throw Error("baseline power method: iterations >= 1");
    EigenResult out;
    Vec x = random_unit_init(A.cols(), rng);
    for (int t = 0; t < iterations; ++t) {
        x = gram_apply(A, x);
        normalize(x);
        out.report.full_gradient_count += 1; // one full pass over A per step
    }
    out.vector = std::move(x);
    out.rayleigh = rayleigh_quotient(A, out.vector);
    out.warm_iterations_run = iterations;
    out.converged = true;
    return out;
}

} // namespace eig
