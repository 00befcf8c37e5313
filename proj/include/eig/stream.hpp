#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eig/vec.hpp"

namespace eig {

/// A finite replay stream ran out of samples.
class StreamExhaustedError : public Error {
public:
    explicit StreamExhaustedError(const std::string& msg) : Error(msg) {}
};

/// Source of i.i.d. vectors a ~ D with a declared variance parameter
/// nvar(D) = ||E(aa^T)^2||_2 / lambda1^2 >= 1. Single-consumer; every draw is
/// counted so sample accounting is exact.
class SampleStream {
public:
    SampleStream(std::size_t d, double nvar_bound);
    virtual ~SampleStream() = default;

    std::size_t dim() const { return d_; }
    double nvar_bound() const { return nvar_; }
    long long samples_drawn() const { return count_; }

    /// Known top eigenvalue of E[aa^T] when the distribution provides one.
    virtual std::optional<double> lambda1_proxy() const { return std::nullopt; }

    /// Next sample, written into out (resized to d).
    void next(Vec& out);
    Vec next();

protected:
    virtual void draw(Vec& out) = 0;

private:
    std::size_t d_;
    double nvar_;
    long long count_ = 0;
};

struct SpikeModelParams {
    double lambda_s;  ///< spike strength; > 0 (0 degenerates to isotropic noise)
    Vec v_star;       ///< unit planted direction
    std::uint64_t seed = 0;
};

/// a = sqrt(lambda_s) * iota * v_star + z with iota ~ N(0,1), z ~ N(0, I).
/// Population covariance has lambda1 = 1 + lambda_s, gap = lambda_s/(1+lambda_s),
/// nvar = (d + 2 + 3*lambda_s)/(1 + lambda_s).
class SpikeStream final : public SampleStream {
public:
    explicit SpikeStream(const SpikeModelParams& params);

    const Vec& v_star() const { return params_.v_star; }
    double lambda1() const { return 1.0 + params_.lambda_s; }
    double gap() const { return params_.lambda_s / (1.0 + params_.lambda_s); }
    std::optional<double> lambda1_proxy() const override { return lambda1(); }

    static double nvar_for(std::size_t d, double lambda_s) {
        return (static_cast<double>(d) + 2.0 + 3.0 * lambda_s) / (1.0 + lambda_s);
    }

protected:
    void draw(Vec& out) override;

private:
    SpikeModelParams params_;
    Rng rng_;
};

/// Deterministic stream at a fixed atom (nvar = 1).
class PointMassStream final : public SampleStream {
public:
    explicit PointMassStream(Vec atom);
    std::optional<double> lambda1_proxy() const override { return lambda1_; }

protected:
    void draw(Vec& out) override;

private:
    Vec atom_;
    double lambda1_;
};

/// Uniform mixture of two atoms; nvar computed from the dense moments.
class TwoAtomStream final : public SampleStream {
public:
    TwoAtomStream(Vec a1, Vec a2, std::uint64_t seed);
    std::optional<double> lambda1_proxy() const override { return lambda1_; }

protected:
    void draw(Vec& out) override;

private:
    Vec a1_, a2_;
    double lambda1_;
    Rng rng_;
};

/// Finite replay of recorded samples; throws StreamExhaustedError at the end.
class ReplayStream final : public SampleStream {
public:
    ReplayStream(std::size_t d, double nvar_bound, std::vector<Vec> samples);

    static std::unique_ptr<ReplayStream> from_binary_file(const std::string& path);
    static std::unique_ptr<ReplayStream> from_csv_file(const std::string& path);

    std::size_t remaining() const { return samples_.size() - pos_; }

protected:
    void draw(Vec& out) override;

private:
    std::vector<Vec> samples_;
    std::size_t pos_ = 0;
};

/// Replay file writers. Binary layout: magic "EIGS", u64 d, u64 n, f64
/// nvar_bound, then n*d little-endian f64. CSV layout: header line
/// "d,n,nvar_bound", then one comma-separated row per sample.
void write_replay_binary(const std::string& path, double nvar_bound,
                         const std::vector<Vec>& samples);
void write_replay_csv(const std::string& path, double nvar_bound,
                      const std::vector<Vec>& samples);

} // namespace eig
