#include "eig/online.hpp"

#include <algorithm>
#include <cmath>

namespace eig {

namespace {

/// Median over m batches of k samples each of the mean of (a^T x)^2.
double median_of_means_rq(SampleStream& stream, const Vec& x, long long k,
                          long long m) {
    if (k < 1 || m < 1) throw Error("median-of-means needs k, m >= 1");
    std::vector<double> batch_means(static_cast<std::size_t>(m));
    Vec a;
    for (long long j = 0; j < m; ++j) {
        double s = 0.0;
        for (long long i = 0; i < k; ++i) {
            stream.next(a);
            const double t = dot(a, x);
            s += t * t;
        }
        batch_means[static_cast<std::size_t>(j)] = s / static_cast<double>(k);
    }
    auto mid = batch_means.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(batch_means.begin(), mid, batch_means.end());
    if (m % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(batch_means.begin(), mid);
    return 0.5 * (lo + hi);
}

long long ceil_ll(double v) {
    return static_cast<long long>(std::ceil(std::min(v, 9.0e15)));
}

} // namespace

double estimate_rayleigh_online(SampleStream& stream, const Vec& x, double eps,
                                double p, const StreamSolverConfig& cfg) {
    if (!(eps > 0.0 && eps <= 1.0)) throw Error("rq estimate: eps must be in (0, 1]");
    if (!(p > 0.0 && p < 1.0)) throw Error("rq estimate: p must be in (0, 1)");
    require_dim(x, stream.dim(), "rq estimate x");
    const long long k = ceil_ll(4.0 * stream.nvar_bound() / (eps * eps));
    const long long m = ceil_ll(cfg.rq_batch_constant * std::log(1.0 / p));
    return median_of_means_rq(stream, x, k, m);
}

Vec ssvrg_iter(SampleStream& stream, const Vec& x0, double eta_eff, long long k,
               long long m, double lambda, const Vec& b, Rng& rng) {
    const std::size_t d = stream.dim();
    require_dim(x0, d, "ssvrg x0");
    require_dim(b, d, "ssvrg b");
    if (k < 1 || m < 1) throw Error("ssvrg_iter needs k, m >= 1");

    // anchor gradient g0 = lambda*x0 - (1/k) sum a (a^T x0) - b
    Vec g0(d, 0.0);
    Vec a;
    for (long long i = 0; i < k; ++i) {
        stream.next(a);
        axpy(dot(a, x0), a, g0);
    }
    for (std::size_t j = 0; j < d; ++j)
        g0[j] = lambda * x0[j] - g0[j] / static_cast<double>(k) - b[j];

    std::uniform_int_distribution<long long> pick_m(1, m);
    const long long m_tilde = pick_m(rng);
    Vec x = x0;
    for (long long t = 0; t < m_tilde; ++t) {
        stream.next(a);
        const double corr = dot(a, x) - dot(a, x0);
        for (std::size_t j = 0; j < d; ++j)
            x[j] -= eta_eff * (lambda * (x[j] - x0[j]) + g0[j]);
        axpy(eta_eff * corr, a, x);
    }
    require_finite(x, "ssvrg iterate");
    return x;
}

Vec streaming_solve(SampleStream& stream, double lambda, double lambda1_hat,
                    const Vec& b, double c3, const StreamSolverConfig& cfg, Rng& rng,
                    std::optional<long long> sample_cap) {
    if (!(c3 > 0.0 && c3 < 1.0)) throw Error("streaming_solve: c3 must be in (0, 1)");
    const double mu = lambda - lambda1_hat;
    if (!(mu > 0.0))
        throw InvalidShiftError("streaming_solve: lambda must exceed lambda1_hat");
    const double nvar = stream.nvar_bound();
    const double s_bar = lambda + nvar * lambda1_hat * lambda1_hat / mu;
    const double c2 = cfg.c2;
    const double eta_eff = c2 / 8.0;
    const long long m = ceil_ll(s_bar / (mu * c2 * c2));

    // stage targets tighten geometrically down to c3
    std::vector<double> stage_c3;
    for (int j = 0;; ++j) {
        const double cj = std::max(c3, std::pow(0.5, j) / 20.0);
        stage_c3.push_back(cj);
        if (cj <= c3) break;
    }

    std::vector<long long> stage_k(stage_c3.size());
    long long plan_total = 0;
    for (std::size_t j = 0; j < stage_c3.size(); ++j) {
        stage_k[j] = std::max(ceil_ll(s_bar / (mu * c2)),
                              ceil_ll(nvar * lambda1_hat * lambda1_hat /
                                      (mu * mu * stage_c3[j])));
        plan_total += stage_k[j] + m; // m bounds the random inner-step count
    }

    long long m_eff = m;
    if (sample_cap && plan_total > *sample_cap) {
        const double s = static_cast<double>(*sample_cap) /
                         static_cast<double>(plan_total);
        for (auto& k : stage_k)
            k = std::max<long long>(1, static_cast<long long>(
                                           static_cast<double>(k) * s));
        m_eff = std::max<long long>(1,
                                    static_cast<long long>(static_cast<double>(m) * s));
    }

    Vec x(stream.dim(), 0.0);
    for (std::size_t j = 0; j < stage_c3.size(); ++j)
        x = ssvrg_iter(stream, x, eta_eff, stage_k[j], m_eff, lambda, b, rng);
    return x;
}

EigenResult top_eigenvector_online(SampleStream& stream, const Vec& x0_warm,
                                   double lambda, double lambda1_hat,
                                   const OnlinePowerConfig& cfg, Rng& rng) {
    const std::size_t d = stream.dim();
    require_dim(x0_warm, d, "online warm start");
    const double mu = lambda - lambda1_hat;
    if (!(mu > 0.0))
        throw InvalidShiftError("online power method: lambda must exceed lambda1_hat");
    const double nvar = stream.nvar_bound();
    const long long start_count = stream.samples_drawn();

    int iters = cfg.max_iterations;
    if (iters <= 0) {
        // c1(i)^2 * mu below a tenth of the epsilon target
        const double need = std::log(std::max(mu / (cfg.target_epsilon * lambda1_hat),
                                              1.0)) /
                            std::log(25.0);
        iters = std::clamp(static_cast<int>(std::ceil(need)) + 1, 2, 12);
    }
    const double p_each = cfg.delta / (2.0 * static_cast<double>(iters));
    const long long m_rq =
        ceil_ll(cfg.solver.rq_batch_constant * std::log(1.0 / p_each));

    EigenResult out;
    out.shift_used = lambda;
    out.lambda1_estimate = lambda1_hat;
    out.gap_estimate = 0.0;

    Vec x = normalized(x0_warm);
    const double g0c = 1.0 / std::sqrt(10.0);
    for (int i = 0; i < iters; ++i) {
        long long share = 0;
        if (cfg.sample_budget) {
            // geometric split, the last iteration getting about half
            const double w = std::pow(2.0, i);
            const double total = std::pow(2.0, iters) - 1.0;
            share = static_cast<long long>(
                static_cast<double>(*cfg.sample_budget) * w / total);
        }

        // Rayleigh-estimate batch size: the (lambda - lambda1)/30 allowance,
        // shrunk further if the iteration's budget slice demands it
        double eps_rq = mu / (30.0 * lambda1_hat);
        long long k_rq = ceil_ll(4.0 * nvar / (eps_rq * eps_rq));
        if (share > 0) {
            const long long rq_cap = std::max<long long>(
                10 * m_rq,
                static_cast<long long>(cfg.rq_budget_share *
                                       static_cast<double>(share)));
            if (k_rq * m_rq > rq_cap) k_rq = std::max<long long>(10, rq_cap / m_rq);
        }

        const double c1 = g0c * std::pow(0.2, i);
        const double c3 = std::min(c1 * c1, 1.0 / 20.0);
        std::optional<long long> solve_cap;
        if (share > 0)
            solve_cap = std::max<long long>(100, share - k_rq * m_rq);

        Vec x_hat = streaming_solve(stream, lambda, lambda1_hat, x, c3, cfg.solver,
                                    rng, solve_cap);
        out.warm_iterations_run += 1;

        const double nrm = norm(x_hat);
        if (!(nrm >= (2.0 / 3.0) / mu)) {
            out.rejected_count += 1;
            continue;
        }
        scale(x_hat, 1.0 / nrm);
        const double rq_hat = median_of_means_rq(stream, x_hat, k_rq, m_rq);
        if (!(rq_hat >= lambda1_hat - mu / 6.0)) {
            out.rejected_count += 1;
            continue;
        }
        x = std::move(x_hat);
        out.accepted_count += 1;
        out.rayleigh = rq_hat;
    }

    out.vector = std::move(x);
    out.converged = out.accepted_count >= std::max(1, iters - 2);
    if (!out.converged)
        out.diagnostics = "online warm loop accepted only " +
                          std::to_string(out.accepted_count) + " of " +
                          std::to_string(iters) + " iterations";
    out.samples_consumed = stream.samples_drawn() - start_count;
    return out;
}

} // namespace eig
