#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "eig/dense.hpp"
#include "eig/online.hpp"
#include "eig/stream.hpp"
#include "support/oracle.hpp"

using namespace eig;

namespace {

Vec unit(std::size_t d, std::size_t axis) {
    Vec v(d, 0.0);
    v[axis] = 1.0;
    return v;
}

} // namespace

TEST_CASE("stream base class enforces the variance lower bound and counts draws") {
    CHECK_THROWS_AS(PointMassStream(Vec{}), Error); // zero-dimensional
    PointMassStream s(Vec{3.0, 4.0});
    CHECK(s.dim() == 2);
    CHECK(s.nvar_bound() == doctest::Approx(1.0));
    CHECK(s.lambda1_proxy().value() == doctest::Approx(25.0));
    CHECK(s.samples_drawn() == 0);
    Vec a = s.next();
    CHECK(a[0] == 3.0);
    CHECK(a[1] == 4.0);
    s.next(a);
    CHECK(s.samples_drawn() == 2);
}

TEST_CASE("spike model formulas and empirical covariance") {
    const std::size_t d = 6;
    SpikeModelParams params;
    params.lambda_s = 4.0;
    params.v_star = unit(d, 0);
    params.seed = 51;
    SpikeStream s(params);
    CHECK(s.lambda1() == doctest::Approx(5.0));
    CHECK(s.gap() == doctest::Approx(0.8));
    CHECK(s.nvar_bound() == doctest::Approx((6.0 + 2.0 + 12.0) / 5.0));
    CHECK(SpikeStream::nvar_for(d, 4.0) == s.nvar_bound());
    CHECK(s.lambda1_proxy().value() == doctest::Approx(5.0));

    const int draws = 100000;
    double vv = 0.0, uu = 0.0, uv = 0.0;
    Vec a;
    for (int i = 0; i < draws; ++i) {
        s.next(a);
        vv += a[0] * a[0];
        uu += a[1] * a[1];
        uv += a[0] * a[1];
    }
    vv /= draws;
    uu /= draws;
    uv /= draws;
    // population: E[(v^T a)^2] = 1 + lambda_s, cross moments vanish
    CHECK(vv == doctest::Approx(5.0).epsilon(0.05));
    CHECK(uu == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(uv) < 0.05);
    CHECK(s.samples_drawn() == draws);
}

TEST_CASE("spike parameters are validated") {
    SpikeModelParams params;
    params.lambda_s = -1.0;
    params.v_star = unit(3, 0);
    CHECK_THROWS_AS(SpikeStream{params}, Error);
    params.lambda_s = 1.0;
    params.v_star = Vec{2.0, 0.0, 0.0}; // not unit
    CHECK_THROWS_AS(SpikeStream{params}, Error);
}

TEST_CASE("two-atom stream computes its moments exactly") {
    Vec a1{1.0, 0.0};
    Vec a2{0.5, 0.5};
    TwoAtomStream s(a1, a2, 7);
    // covariance (a1 a1^T + a2 a2^T)/2 via the dense reference
    DenseMatrix cov(2, 2);
    cov(0, 0) = 0.5 * (1.0 + 0.25);
    cov(0, 1) = 0.5 * 0.25;
    cov(1, 0) = 0.5 * 0.25;
    cov(1, 1) = 0.5 * 0.25;
    auto eig_cov = jacobi_eigensym(cov);
    CHECK(s.lambda1_proxy().value() ==
          doctest::Approx(eig_cov.values[0]).epsilon(1e-12));

    // fourth moment E (a a^T)^2 = (||a1||^2 a1 a1^T + ||a2||^2 a2 a2^T)/2
    DenseMatrix m4(2, 2);
    const double n1 = 1.0, n2 = 0.5;
    m4(0, 0) = 0.5 * (n1 * 1.0 + n2 * 0.25);
    m4(0, 1) = 0.5 * (n2 * 0.25);
    m4(1, 0) = m4(0, 1);
    m4(1, 1) = 0.5 * (n2 * 0.25);
    auto eig_m4 = jacobi_eigensym(m4);
    const double expected_nvar = std::max(
        1.0, eig_m4.values[0] / (eig_cov.values[0] * eig_cov.values[0]));
    CHECK(s.nvar_bound() == doctest::Approx(expected_nvar).epsilon(1e-10));

    // both atoms appear with frequency ~1/2
    int first = 0;
    Vec a;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        s.next(a);
        if (a[1] == 0.0) ++first;
    }
    CHECK(std::abs(first - draws / 2) < 300);
}

TEST_CASE("replay binary round trip is exact and exhausts loudly") {
    Rng rng(61);
    std::vector<Vec> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(gaussian_vec(3, rng));
    const std::string path = "replay_test.bin";
    write_replay_binary(path, 2.5, samples);
    auto s = ReplayStream::from_binary_file(path);
    std::remove(path.c_str());
    CHECK(s->dim() == 3);
    CHECK(s->nvar_bound() == 2.5);
    CHECK(s->remaining() == 5);
    for (int i = 0; i < 5; ++i) {
        Vec a = s->next();
        for (int j = 0; j < 3; ++j) CHECK(a[j] == samples[i][j]); // bit-exact
    }
    CHECK(s->remaining() == 0);
    CHECK_THROWS_AS(s->next(), StreamExhaustedError);
    CHECK(s->samples_drawn() == 5);
}

TEST_CASE("replay csv round trip is exact") {
    Rng rng(67);
    std::vector<Vec> samples;
    for (int i = 0; i < 4; ++i) samples.push_back(gaussian_vec(2, rng));
    const std::string path = "replay_test.csv";
    write_replay_csv(path, 1.25, samples);
    auto s = ReplayStream::from_csv_file(path);
    std::remove(path.c_str());
    CHECK(s->dim() == 2);
    CHECK(s->nvar_bound() == 1.25);
    for (int i = 0; i < 4; ++i) {
        Vec a = s->next();
        for (int j = 0; j < 2; ++j) CHECK(a[j] == samples[i][j]);
    }
}

TEST_CASE("replay file errors") {
    CHECK_THROWS_AS(ReplayStream::from_binary_file("missing.bin"), Error);
    const std::string path = "replay_bad.csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("d,n,nvar_bound\n2,1,1.0\n1.0,not_a_number\n", f);
    std::fclose(f);
    CHECK_THROWS_AS(ReplayStream::from_csv_file(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("median of means is exact on a point mass") {
    PointMassStream s(Vec{3.0, 4.0});
    Vec x{0.6, 0.8};
    const double est = estimate_rayleigh_online(s, x, 0.5, 0.1);
    CHECK(est == doctest::Approx(25.0).epsilon(1e-12)); // (a^T x)^2 = 25
    CHECK_THROWS_AS(estimate_rayleigh_online(s, x, 0.0, 0.1), Error);
    CHECK_THROWS_AS(estimate_rayleigh_online(s, x, 0.5, 1.0), Error);
}

TEST_CASE("median of means concentrates on the spike model") {
    const std::size_t d = 5;
    SpikeModelParams params;
    params.lambda_s = 3.0;
    params.v_star = unit(d, 0);
    params.seed = 71;
    SpikeStream s(params);
    const double eps = 0.1, p = 0.01;
    int failures = 0;
    const int runs = 20;
    for (int r = 0; r < runs; ++r) {
        Vec x = unit(d, 0); // true value 1 + lambda_s = 4
        const long long before = s.samples_drawn();
        const double est = estimate_rayleigh_online(s, x, eps, p);
        const long long used = s.samples_drawn() - before;
        // k*m samples exactly
        const long long k = static_cast<long long>(
            std::ceil(4.0 * s.nvar_bound() / (eps * eps)));
        const long long m =
            static_cast<long long>(std::ceil(20.0 * std::log(1.0 / p)));
        CHECK(used == k * m);
        if (std::abs(est - 4.0) > eps * 4.0) ++failures;
    }
    CHECK(failures == 0); // each run fails with probability <= 0.01
}

TEST_CASE("streaming iteration holds its fixed point on a point mass") {
    PointMassStream s(Vec{1.0, 0.0});
    const double lambda = 2.0;
    // (lambda I - a a^T) x = b with b = e1: x* = e1
    Vec b = unit(2, 0);
    Vec xstar = unit(2, 0);
    Rng rng(73);
    Vec out = ssvrg_iter(s, xstar, 1.0 / 352.0, 10, 50, lambda, b, rng);
    CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ssvrg_iter(s, xstar, 0.1, 0, 50, lambda, b, rng), Error);
    CHECK_THROWS_AS(ssvrg_iter(s, Vec{1.0}, 0.1, 10, 50, lambda, b, rng),
                    DimensionError);
}

TEST_CASE("streaming solve reaches the point-mass solution from zero") {
    PointMassStream s(Vec{1.0, 0.0});
    const double lambda = 2.0;
    Vec b = unit(2, 0);
    Rng rng(79);
    StreamSolverConfig cfg;
    Vec x = streaming_solve(s, lambda, 1.0, b, 0.01, cfg, rng);
    // x* = (2I - e1 e1^T)^{-1} e1 = e1
    CHECK(x[0] == doctest::Approx(1.0).epsilon(0.15));
    CHECK(std::abs(x[1]) < 0.1);
    CHECK_THROWS_AS(streaming_solve(s, 0.5, 1.0, b, 0.01, cfg, rng),
                    InvalidShiftError);
    CHECK_THROWS_AS(streaming_solve(s, 2.0, 1.0, b, 0.0, cfg, rng), Error);
}

TEST_CASE("a sample cap scales the whole stage plan down") {
    SpikeModelParams params;
    params.lambda_s = 4.0;
    params.v_star = unit(4, 0);
    params.seed = 83;

    long long uncapped, capped;
    {
        SpikeStream s(params);
        Rng rng(89);
        StreamSolverConfig cfg;
        streaming_solve(s, 7.0, 5.0, unit(4, 0), 0.02, cfg, rng);
        uncapped = s.samples_drawn();
    }
    {
        SpikeStream s(params);
        Rng rng(89);
        StreamSolverConfig cfg;
        const long long cap = uncapped / 4;
        streaming_solve(s, 7.0, 5.0, unit(4, 0), 0.02, cfg, rng, cap);
        capped = s.samples_drawn();
        CHECK(capped <= cap);
    }
    CHECK(capped < uncapped);
}

TEST_CASE("tightening the error target costs proportionally more samples") {
    SpikeModelParams params;
    params.lambda_s = 4.0;
    params.v_star = unit(4, 0);
    params.seed = 97;
    SpikeStream s(params);
    StreamSolverConfig cfg;
    // use the dominant-stage anchor batch, which is deterministic in c3
    auto anchor_cost = [&](double c3) {
        const double mu = 2.0, l1 = 5.0;
        return std::ceil(s.nvar_bound() * l1 * l1 / (mu * mu * c3));
    };
    CHECK(anchor_cost(0.005) / anchor_cost(0.02) == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("online power method recovers the spike direction") {
    const std::size_t d = 8;
    SpikeModelParams params;
    params.lambda_s = 4.0;
    params.v_star = unit(d, 0);
    params.seed = 101;
    SpikeStream s(params);

    // warm start: small perturbation of the planted direction
    Vec x0 = unit(d, 0);
    x0[1] = 0.2;

    OnlinePowerConfig cfg;
    cfg.target_epsilon = 0.05;
    cfg.delta = 0.2;
    cfg.sample_budget = 600000;
    Rng rng(103);
    const double lambda = 7.0; // lambda1 = 5, mu = 2
    auto res = top_eigenvector_online(s, x0, lambda, 5.0, cfg, rng);
    CHECK(res.converged);
    CHECK(res.accepted_count >= 1);
    CHECK(std::abs(dot(res.vector, params.v_star)) > 0.9);
    CHECK(res.samples_consumed == s.samples_drawn());
    CHECK(res.samples_consumed <= 2 * *cfg.sample_budget);
}

TEST_CASE("online guards reject an unreachable rayleigh target") {
    PointMassStream s(Vec{1.0, 0.0});
    Vec x0 = unit(2, 0);
    OnlinePowerConfig cfg;
    cfg.max_iterations = 2;
    Rng rng(107);
    // claimed lambda1 = 2 while the true top eigenvalue is 1
    auto res = top_eigenvector_online(s, x0, 2.5, 2.0, cfg, rng);
    CHECK_FALSE(res.converged);
    CHECK(res.accepted_count == 0);
    CHECK(res.rejected_count == 2);
    CHECK_FALSE(res.diagnostics.empty());
}

TEST_CASE("online validation") {
    PointMassStream s(Vec{1.0, 0.0});
    OnlinePowerConfig cfg;
    Rng rng(109);
    CHECK_THROWS_AS(top_eigenvector_online(s, unit(2, 0), 0.9, 1.0, cfg, rng),
                    InvalidShiftError);
    CHECK_THROWS_AS(top_eigenvector_online(s, Vec{1.0}, 2.0, 1.0, cfg, rng),
                    DimensionError);
}
