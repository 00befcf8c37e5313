// Acceptance gate: one criterion per invocation (argv[1] in 1..11), one
// PASS/FAIL line on stdout, exit 0 on pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eig/accel.hpp"
#include "eig/diagnostics.hpp"
#include "eig/harness.hpp"
#include "eig/mmio.hpp"
#include "eig/online.hpp"
#include "eig/power.hpp"
#include "eig/stream.hpp"
#include "eig/svrg.hpp"
#include "eig/synth.hpp"
#include "support/oracle.hpp"

using namespace eig;
using test::DenseOracle;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact contraction of the potential under one dense inverse application.
Check criterion_exact_contraction() {
    Check c;
    auto A = test::reference_diag_instance();
    auto oracle = DenseOracle::from(A);
    const double lambda = 1.005; // (1 + gap/100) * lambda1 with gap = 1/2
    ShiftedOperator B(A, lambda, 1.0);
    const double expected = 0.005 / 0.505; // mu / (lambda - lambda2) <= 1/100
    c.require(expected <= 1.0 / 100.0, "expected factor exceeds 1/100");

    for (int k = 1; k <= 20; ++k) {
        const double angle = 0.075 * static_cast<double>(k); // up to ~1.5 rad
        Vec x{std::cos(angle), std::sin(angle)};
        const double g_before = potential(B, oracle.v1(), x);
        Vec y = oracle.b_inv_apply(lambda, x);
        const double g_after = potential(B, oracle.v1(), y);
        const double ratio = g_after / g_before;
        c.require(std::abs(ratio - expected) <= 1e-10,
                  "contraction ratio " + fmt(ratio) + " != " + fmt(expected) +
                      " at angle " + fmt(angle));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 2. Per-component variance bound at the minimizer, by full enumeration.
Check criterion_variance_bound() {
    Check c;
    Rng rng(20250824);
    int worst_reported = 0;
    for (int inst = 0; inst < 100; ++inst) {
        std::uniform_int_distribution<std::size_t> pick_d(2, 50);
        const std::size_t d = pick_d(rng);
        std::uniform_int_distribution<std::size_t> pick_n(d, 200);
        const std::size_t n = pick_n(rng);
        auto A = test::random_sparse_instance(n, d, rng, 0.3);
        auto oracle = DenseOracle::from(A);
        const double lambda = test::in_band_lambda(oracle);
        const double mu = lambda - oracle.lambda1();
        const double rhs_const = 4.0 * oracle.lambda1() * A.frob_sq() / mu;
        auto dist = build_sampling_distribution(A);

        Vec b = gaussian_vec(d, rng);
        Vec xstar = oracle.b_inv_apply(lambda, b);
        const double f_star = oracle.f_value(lambda, xstar, b);
        for (int trial = 0; trial < 20; ++trial) {
            Vec x = gaussian_vec(d, rng);
            double lhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double p = dist.probability(i);
                if (p == 0.0) continue;
                Vec gi = component_gradient(A, lambda, i, x, b);
                Vec gis = component_gradient(A, lambda, i, xstar, b);
                lhs += norm_sq(sub(gi, gis)) / p;
            }
            const double rhs =
                rhs_const * (oracle.f_value(lambda, x, b) - f_star) + 1e-9;
            if (lhs > rhs && worst_reported < 3) {
                ++worst_reported;
                c.require(false, "instance " + std::to_string(inst) + ": lhs " +
                                     fmt(lhs) + " > rhs " + fmt(rhs));
            } else {
                c.require(lhs <= rhs, "variance bound violated");
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 3. Mean epoch halving over 500 seeded epochs on three reference instances.
Check criterion_epoch_halving() {
    Check c;
    struct Ref {
        std::string name;
        DataMatrix A;
        double lambda;
    };
    SynthSpec spec;
    spec.n = 20;
    spec.d = 10;
    spec.spectrum = gapped_spectrum(10, 0.8);
    spec.seed = 3;
    std::vector<Ref> refs;
    refs.push_back({"diag", test::reference_diag_instance(), 1.02});
    refs.push_back({"rank-one", DataMatrix::from_dense_rows({{1.0, 0.0}}, 2), 1.01});
    refs.push_back({"synthetic", synth_instance(spec), 1.1});

    for (const auto& ref : refs) {
        auto oracle = DenseOracle::from(ref.A);
        ShiftedOperator B(ref.A, ref.lambda, oracle.lambda1());
        auto dist = build_sampling_distribution(ref.A);
        Rng init_rng(5);
        Vec b = gaussian_vec(ref.A.cols(), init_rng);
        Vec xstar = oracle.b_inv_apply(ref.lambda, b);
        Vec x0 = gaussian_vec(ref.A.cols(), init_rng);
        const double err0 =
            std::pow(oracle.b_norm(ref.lambda, sub(x0, xstar)), 2);

        SvrgConfig cfg; // faithful constants
        double acc = 0.0;
        const int seeds = 500;
        for (int s = 0; s < seeds; ++s) {
            Rng rng(1000 + static_cast<std::uint64_t>(s));
            Vec out = svrg_epoch(B, b, x0, cfg, dist, rng);
            acc += std::pow(oracle.b_norm(ref.lambda, sub(out, xstar)), 2);
        }
        const double mean_ratio = acc / (seeds * err0);
        c.require(mean_ratio <= 0.6, ref.name + ": mean epoch error ratio " +
                                         fmt(mean_ratio) + " > 0.6");
        c.detail << (c.detail.str().empty() ? "" : "; ") << ref.name << " ratio "
                 << fmt(mean_ratio);
    }
    return c;
}

// ---------------------------------------------------------------------------
// 4. Regularized variance bound with constant (gamma^2 + 12 l1 F^2)/(mu+gamma).
Check criterion_regularized_variance() {
    Check c;
    Rng rng(424242);
    for (int inst = 0; inst < 100; ++inst) {
        std::uniform_int_distribution<std::size_t> pick_d(2, 20);
        const std::size_t d = pick_d(rng);
        std::uniform_int_distribution<std::size_t> pick_n(d, 60);
        const std::size_t n = pick_n(rng);
        auto A = test::random_sparse_instance(n, d, rng, 0.4);
        auto oracle = DenseOracle::from(A);
        const double lambda = test::in_band_lambda(oracle);
        const double mu = lambda - oracle.lambda1();
        ShiftedOperator B(A, lambda, oracle.lambda1());
        AccelConfig acfg;
        const double gamma = resolve_gamma(B, acfg);
        const double rhs_const =
            (gamma * gamma + 12.0 * oracle.lambda1() * A.frob_sq()) / (mu + gamma);
        auto dist = build_sampling_distribution(A);

        Vec b = gaussian_vec(d, rng);
        Vec x0 = gaussian_vec(d, rng); // regularization center
        // minimizer of the regularized objective: (B + gamma I) x = b + gamma x0
        Vec rhs_vec = b;
        axpy(gamma, x0, rhs_vec);
        Vec xstar(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            axpy(dot(oracle.vectors[i], rhs_vec) /
                     (lambda + gamma - oracle.values[i]),
                 oracle.vectors[i], xstar);
        auto f_reg = [&](const Vec& x) {
            return oracle.f_value(lambda, x, b) +
                   0.5 * gamma * norm_sq(sub(x, x0));
        };
        const double f_star = f_reg(xstar);

        for (int trial = 0; trial < 20; ++trial) {
            Vec x = gaussian_vec(d, rng);
            double lhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double p = dist.probability(i);
                if (p == 0.0) continue;
                Vec gi = regularized_component_gradient(A, lambda, gamma, i, x, x0, b);
                Vec gis =
                    regularized_component_gradient(A, lambda, gamma, i, xstar, x0, b);
                lhs += norm_sq(sub(gi, gis)) / p;
            }
            const double rhs = rhs_const * (f_reg(x) - f_star) + 1e-9;
            c.require(lhs <= rhs, "instance " + std::to_string(inst) + ": lhs " +
                                      fmt(lhs) + " > rhs " + fmt(rhs));
            if (!c.pass) return c;
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 5. Shift search band membership and iteration bound.
Check criterion_shift_band() {
    Check c;
    for (double gap : {0.5, 0.1, 0.02}) {
        const int t_bound =
            static_cast<int>(std::ceil(std::log2(10.0 / gap))) + 1;
        int in_band = 0;
        const int seeds = 50;
        for (int s = 0; s < seeds; ++s) {
            SynthSpec spec;
            spec.n = 16;
            spec.d = 8;
            spec.spectrum = gapped_spectrum(8, gap);
            spec.seed = static_cast<std::uint64_t>(700 + s);
            auto A = synth_instance(spec);
            DenseShiftedOracle oracle;
            ShiftSearchConfig cfg;
            Rng rng(static_cast<std::uint64_t>(9000 + s));
            ShiftSearchResult res;
            try {
                res = estimate_shift(A, cfg, oracle, rng);
            } catch (const Error& e) {
                c.require(false, "gap " + fmt(gap) + " seed " +
                                     std::to_string(s) + ": " + e.what());
                continue;
            }
            c.require(res.iterations <= t_bound,
                      "gap " + fmt(gap) + " seed " + std::to_string(s) + ": T " +
                          std::to_string(res.iterations) + " > " +
                          std::to_string(t_bound));
            if (res.lambda_bar >= (1.0 + gap / 120.0) &&
                res.lambda_bar <= (1.0 + gap / 8.0))
                ++in_band;
        }
        c.require(in_band >= 45, "gap " + fmt(gap) + ": only " +
                                     std::to_string(in_band) + "/50 in band");
        c.detail << (c.detail.str().empty() ? "" : "; ") << "gap " << fmt(gap)
                 << ": " << in_band << "/50 in band";
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. Offline end-to-end accuracy across seeds, gaps and both solvers.
Check criterion_offline_end_to_end() {
    Check c;
    for (const char* solver : {"svrg", "accelerated"}) {
        int good = 0, total = 0;
        for (double gap : {0.3, 0.05}) {
            SynthSpec spec;
            spec.n = 50;
            spec.d = 25;
            spec.spectrum = gapped_spectrum(25, gap);
            spec.seed = 77;
            auto A = synth_instance(spec);
            auto oracle = DenseOracle::from(A);
            for (int s = 0; s < 20; ++s) {
                PowerConfig cfg;
                cfg.solver_choice = solver;
                cfg.target_epsilon = 1e-6;
                cfg.seed = static_cast<std::uint64_t>(100 * s + 17);
                EigenResult res;
                try {
                    res = top_eigenvector_offline(A, cfg);
                } catch (const Error& e) {
                    c.require(false, std::string(solver) + " gap " + fmt(gap) +
                                         " seed " + std::to_string(s) + ": " +
                                         e.what());
                    ++total;
                    continue;
                }
                ++total;
                const double rq = oracle.quad(res.vector) / norm_sq(res.vector);
                if (rq >= (1.0 - 1e-6) * oracle.lambda1()) ++good;
            }
        }
        c.require(good * 100 >= total * 95,
                  std::string(solver) + ": only " + std::to_string(good) + "/" +
                      std::to_string(total) + " runs reached the target");
        c.detail << (c.detail.str().empty() ? "" : "; ") << solver << " "
                 << good << "/" << total;
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Median-of-means Rayleigh estimator failure rate.
Check criterion_median_of_means() {
    Check c;
    const std::size_t d = 5;
    const double lambda_s = 9.0, eps = 0.2, p = 0.1;
    const double lambda1 = 1.0 + lambda_s;
    int failures = 0;
    const int runs = 200;
    Rng dir_rng(31);
    for (int r = 0; r < runs; ++r) {
        SpikeModelParams params;
        params.lambda_s = lambda_s;
        params.v_star = random_unit_init(d, dir_rng);
        params.seed = static_cast<std::uint64_t>(5000 + r);
        SpikeStream stream(params);
        Vec x = random_unit_init(d, dir_rng);
        const double truth =
            1.0 + lambda_s * std::pow(dot(x, params.v_star), 2);
        const double est = estimate_rayleigh_online(stream, x, eps, p);
        if (std::abs(est - truth) > eps * lambda1) ++failures;
    }
    c.require(failures <= runs / 10,
              "failure rate " + std::to_string(failures) + "/200 > 0.1");
    c.detail << failures << "/200 failures";
    return c;
}

// ---------------------------------------------------------------------------
// 8. Streaming sample-optimal scaling and final alignment.
Check criterion_streaming_scaling() {
    Check c;
    const std::size_t d = 20;
    const double lambda_s = 9.0;
    const double lambda1 = 1.0 + lambda_s;
    const double gap = lambda_s / lambda1;
    const double lambda = lambda1 * (1.0 + 0.5 * gap);
    const long long base_budget = 40000;
    const int trials = 50;

    std::vector<double> mean_err(4, 0.0);
    int aligned = 0;
    Rng dir_rng(47);
    for (int t = 0; t < trials; ++t) {
        SpikeModelParams params;
        params.lambda_s = lambda_s;
        params.v_star = random_unit_init(d, dir_rng);
        for (int b = 0; b < 4; ++b) {
            params.seed = static_cast<std::uint64_t>(100000 + 10 * t + b);
            SpikeStream stream(params);
            OnlinePowerConfig cfg;
            cfg.target_epsilon = 1e-3;
            cfg.delta = 0.1;
            cfg.sample_budget = base_budget << b;
            Rng rng(static_cast<std::uint64_t>(777 + 10 * t + b));
            auto res = top_eigenvector_online(stream, params.v_star, lambda,
                                              lambda1, cfg, rng);
            const double align = std::abs(dot(res.vector, params.v_star));
            const double err =
                std::max(lambda1 - (1.0 + lambda_s * align * align), 0.0);
            mean_err[static_cast<std::size_t>(b)] += err / trials;
            if (b == 3 && align >= 0.99) ++aligned;
        }
    }

    double geo = 1.0;
    for (int b = 0; b < 3; ++b) {
        const double ratio = mean_err[static_cast<std::size_t>(b)] /
                             std::max(mean_err[static_cast<std::size_t>(b + 1)],
                                      1e-300);
        geo *= ratio;
        c.detail << (b ? "; " : "") << "x" << (1 << b) << "->x" << (2 << b)
                 << " ratio " << fmt(ratio);
    }
    geo = std::cbrt(geo);
    c.detail << "; geometric mean " << fmt(geo) << "; aligned " << aligned
             << "/" << trials;
    c.require(geo >= 1.4 && geo <= 2.8,
              "per-doubling error ratio " + fmt(geo) + " outside [1.4, 2.8]");
    c.require(aligned * 10 >= trials * 8,
              "only " + std::to_string(aligned) + "/50 trials reached |x.v*| >= 0.99");
    return c;
}

// ---------------------------------------------------------------------------
// 9. Equal-progress lemma: exact inverse iteration contracts both tangents.
Check criterion_equal_progress() {
    Check c;
    Rng rng(52);
    struct Inst {
        DataMatrix A;
        double lambda;
    };
    std::vector<Inst> insts;
    insts.push_back({test::reference_diag_instance(), 1.005});
    auto R = test::random_sparse_instance(12, 6, rng);
    auto ro = DenseOracle::from(R);
    insts.push_back({std::move(R), test::in_band_lambda(ro)});

    for (const auto& inst : insts) {
        auto oracle = DenseOracle::from(inst.A);
        ShiftedOperator B(inst.A, inst.lambda, oracle.lambda1());
        const double bound =
            (inst.lambda - oracle.lambda1()) / (inst.lambda - oracle.lambda2());
        auto l2_tangent = [&](const Vec& x) {
            const double a = dot(oracle.v1(), x);
            Vec perp = x;
            axpy(-a, oracle.v1(), perp);
            return norm(perp) / std::abs(a);
        };
        for (int s = 0; s < 50; ++s) {
            Vec x = gaussian_vec(inst.A.cols(), rng);
            if (std::abs(dot(oracle.v1(), x)) < 1e-3) continue;
            Vec y = oracle.b_inv_apply(inst.lambda, x);
            const double r_l2 = l2_tangent(y) / l2_tangent(x);
            const double r_b =
                potential(B, oracle.v1(), y) / potential(B, oracle.v1(), x);
            c.require(r_l2 <= bound + 1e-9,
                      "l2 tangent ratio " + fmt(r_l2) + " > " + fmt(bound));
            c.require(r_b <= bound + 1e-9,
                      "B tangent ratio " + fmt(r_b) + " > " + fmt(bound));
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 10. Potential/Rayleigh sandwich and the numerator lemma on unit vectors.
Check criterion_sandwich() {
    Check c;
    Rng rng(61);
    std::vector<DataMatrix> insts;
    insts.push_back(test::reference_diag_instance());
    insts.push_back(test::random_sparse_instance(10, 5, rng));
    insts.push_back(test::random_sparse_instance(16, 8, rng));

    for (const auto& A : insts) {
        auto oracle = DenseOracle::from(A);
        const double lambda = test::in_band_lambda(oracle);
        const double mu = lambda - oracle.lambda1();
        const double gap = oracle.gap();
        ShiftedOperator B(A, lambda, oracle.lambda1());
        int sandwich_checked = 0, numerator_checked = 0;
        for (int s = 0; s < 1000; ++s) {
            Vec x = gaussian_vec(A.cols(), rng);
            // bias half the draws toward v1, with a gap-scaled tangent, so
            // the hypotheses of both bounds hold for plenty of them
            if (s % 2 == 0) {
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                const double t = 0.3 * std::sqrt(gap) * unif(rng) / norm(x);
                Vec biased = oracle.v1();
                axpy(t, x, biased);
                x = std::move(biased);
            }
            normalize(x);
            const double eps_q = oracle.lambda1() - oracle.quad(x);
            const double g2 = std::pow(potential(B, oracle.v1(), x), 2);

            if (eps_q <= 0.5 * oracle.lambda1() * gap) {
                ++sandwich_checked;
                const double lo = eps_q / mu;
                const double hi = (1.0 + mu / (oracle.lambda1() * gap)) *
                                  (1.0 + 2.0 * eps_q / (oracle.lambda1() * gap)) *
                                  eps_q / mu;
                c.require(g2 >= lo - 1e-9, "sandwich lower bound violated");
                c.require(g2 <= hi + 1e-9, "sandwich upper bound violated");
            }
            if (eps_q <= oracle.lambda1() * gap) {
                ++numerator_checked;
                Vec Bx = oracle.b_apply(lambda, x);
                const double mid =
                    dot(x, Bx) - dot(oracle.v1(), Bx) * dot(oracle.v1(), x);
                c.require(mid >= eps_q - 1e-9, "numerator lower bound violated");
                c.require(mid <=
                              eps_q * (1.0 + mu / (oracle.lambda1() * gap)) + 1e-9,
                          "numerator upper bound violated");
            }
            if (!c.pass) return c;
        }
        c.require(sandwich_checked >= 200, "too few vectors met the hypothesis");
        c.require(numerator_checked >= 200, "too few vectors met the hypothesis");
    }
    return c;
}

// ---------------------------------------------------------------------------
// 11. Bit-exact IO and byte-identical reproducibility.
Check criterion_determinism_io() {
    Check c;
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
        auto A = test::random_sparse_instance(12, 6, rng, 0.4);
        std::ostringstream out;
        write_matrix_market(out, A);
        std::istringstream in(out.str());
        auto B = read_matrix_market(in);
        c.require(B.values() == A.values(), "matrix market values changed");
        c.require(B.col_indices() == A.col_indices(), "column indices changed");
        c.require(B.row_offsets() == A.row_offsets(), "row offsets changed");
    }

    RunSpec spec;
    spec.mode = "offline";
    spec.input = "synth:d=10,n=20,gap=0.4,seed=6";
    spec.epsilon = 1e-6;
    spec.solver = "svrg";
    spec.seed = 23;
    const std::string r1 = stable_record_string(execute_run(spec));
    const std::string r2 = stable_record_string(execute_run(spec));
    c.require(r1 == r2, "offline record not byte-identical");

    RunSpec shift_spec;
    shift_spec.mode = "estimate-shift";
    shift_spec.input = "synth:d=8,n=16,gap=0.5,seed=2";
    shift_spec.seed = 4;
    const std::string s1 = stable_record_string(execute_run(shift_spec));
    const std::string s2 = stable_record_string(execute_run(shift_spec));
    c.require(s1 == s2, "estimate-shift record not byte-identical");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
        return 2;
    }
    const int n = std::atoi(argv[1]);
    static const struct {
        const char* name;
        std::function<Check()> run;
    } criteria[] = {
        {"exact contraction", criterion_exact_contraction},
        {"variance bound", criterion_variance_bound},
        {"epoch halving", criterion_epoch_halving},
        {"regularized variance bound", criterion_regularized_variance},
        {"shift search band", criterion_shift_band},
        {"offline end-to-end", criterion_offline_end_to_end},
        {"median-of-means rayleigh", criterion_median_of_means},
        {"streaming scaling", criterion_streaming_scaling},
        {"equal progress", criterion_equal_progress},
        {"potential sandwich", criterion_sandwich},
        {"determinism and io", criterion_determinism_io},
    };
    if (n < 1 || n > 11) {
        std::fprintf(stderr, "criterion must be in 1..11\n");
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
        result = criteria[n - 1].run();
    } catch (const std::exception& e) {
        result.pass = false;
        result.detail << "unhandled exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    std::printf("criterion %d (%s): %s [%.1fs]%s%s\n", n, criteria[n - 1].name,
                result.pass ? "PASS" : "FAIL", secs,
                result.detail.str().empty() ? "" : " — ",
                result.detail.str().c_str());
    return result.pass ? 0 : 1;
}
