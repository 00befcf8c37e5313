#include "eig/stream.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "eig/dense.hpp"
#include "eig/matrix.hpp"

namespace eig {

SampleStream::SampleStream(std::size_t d, double nvar_bound)
    : d_(d), nvar_(nvar_bound) {
    if (d < 1) throw DimensionError("sample stream needs dimension >= 1");
    if (!(nvar_ >= 1.0)) throw Error("nvar bound must be >= 1");
}

void SampleStream::next(Vec& out) {
    out.resize(d_);
    draw(out);
    ++count_;
}

Vec SampleStream::next() {
    Vec out;
    next(out);
    return out;
}

SpikeStream::SpikeStream(const SpikeModelParams& params)
    : SampleStream(params.v_star.size(), nvar_for(params.v_star.size(), params.lambda_s)),
      params_(params), rng_(params.seed) {
    if (!(params_.lambda_s >= 0.0)) throw Error("spike strength must be >= 0");
    const double n = norm(params_.v_star);
    if (std::abs(n - 1.0) > 1e-12) throw Error("spike direction must be unit norm");
}

void SpikeStream::draw(Vec& out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double iota = normal(rng_);
    const double s = std::sqrt(params_.lambda_s) * iota;
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = s * params_.v_star[j] + normal(rng_);
}

PointMassStream::PointMassStream(Vec atom)
    : SampleStream(atom.size(), 1.0), atom_(std::move(atom)),
      lambda1_(norm_sq(atom_)) {
    require_finite(atom_, "point mass atom");
}

void PointMassStream::draw(Vec& out) { out = atom_; }

namespace {

/// lambda1 and nvar of the mixture 1/2 delta_{a1} + 1/2 delta_{a2} from the
/// dense moment matrices (test-scale dimensions only).
std::pair<double, double> two_atom_stats(const Vec& a1, const Vec& a2) {
    if (a1.size() != a2.size()) throw DimensionError("two-atom: size mismatch");
    const std::size_t d = a1.size();
    DenseMatrix cov(d, d), second(d, d);
    const double w1 = norm_sq(a1), w2 = norm_sq(a2);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            cov(i, j) = 0.5 * (a1[i] * a1[j] + a2[i] * a2[j]);
            // E (aa^T)^2 = E ||a||^2 aa^T
            second(i, j) = 0.5 * (w1 * a1[i] * a1[j] + w2 * a2[i] * a2[j]);
        }
    const double l1 = jacobi_eigensym(cov).values[0];
    const double m2 = jacobi_eigensym(second).values[0];
    return {l1, m2 / (l1 * l1)};
}

} // namespace

TwoAtomStream::TwoAtomStream(Vec a1, Vec a2, std::uint64_t seed)
    : SampleStream(a1.size(), std::max(1.0, two_atom_stats(a1, a2).second)),
      a1_(std::move(a1)), a2_(std::move(a2)), rng_(seed) {
    if (a1_.size() != a2_.size()) throw DimensionError("two-atom: size mismatch");
    lambda1_ = two_atom_stats(a1_, a2_).first;
}

void TwoAtomStream::draw(Vec& out) {
    std::uniform_int_distribution<int> coin(0, 1);
    out = coin(rng_) ? a2_ : a1_;
}

ReplayStream::ReplayStream(std::size_t d, double nvar_bound, std::vector<Vec> samples)
    : SampleStream(d, nvar_bound), samples_(std::move(samples)) {
    for (const Vec& s : samples_) {
        require_dim(s, d, "replay sample");
        require_finite(s, "replay sample");
    }
}

void ReplayStream::draw(Vec& out) {
    if (pos_ >= samples_.size())
        throw StreamExhaustedError("replay stream exhausted after " +
                                   std::to_string(samples_.size()) + " samples");
    out = samples_[pos_++];
}

namespace {
constexpr char kMagic[4] = {'E', 'I', 'G', 'S'};
}

std::unique_ptr<ReplayStream> ReplayStream::from_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open replay file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw ParseError("bad replay magic in " + path);
    std::uint64_t d = 0, n = 0;
    double nvar = 0.0;
    in.read(reinterpret_cast<char*>(&d), sizeof d);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&nvar), sizeof nvar);
    if (!in) throw ParseError("truncated replay header in " + path);
    std::vector<Vec> samples(n, Vec(d));
    for (auto& s : samples) {
        in.read(reinterpret_cast<char*>(s.data()),
                static_cast<std::streamsize>(d * sizeof(double)));
        if (!in) throw ParseError("truncated replay payload in " + path);
    }
    return std::make_unique<ReplayStream>(d, nvar, std::move(samples));
}

std::unique_ptr<ReplayStream> ReplayStream::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open replay file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty replay csv", 1);
    std::istringstream header(line);
    std::size_t d = 0, n = 0;
    double nvar = 0.0;
    char comma;
    if (!(header >> d >> comma >> n >> comma >> nvar))
        throw ParseError("malformed replay csv header", 1);
    std::vector<Vec> samples;
    samples.reserve(n);
    long lineno = 1;
    while (samples.size() < n && std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        Vec s(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (j > 0 && !(row >> comma))
                throw ParseError("malformed replay csv row", lineno);
            if (!(row >> s[j])) throw ParseError("malformed replay csv row", lineno);
        }
        samples.push_back(std::move(s));
    }
    if (samples.size() < n)
        throw ParseError("replay csv ends before the declared sample count", lineno);
    return std::make_unique<ReplayStream>(d, nvar, std::move(samples));
}

void write_replay_binary(const std::string& path, double nvar_bound,
                         const std::vector<Vec>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    const std::uint64_t n = samples.size();
    const std::uint64_t d = n ? samples[0].size() : 0;
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&d), sizeof d);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&nvar_bound), sizeof nvar_bound);
    for (const Vec& s : samples)
        out.write(reinterpret_cast<const char*>(s.data()),
                  static_cast<std::streamsize>(s.size() * sizeof(double)));
}

void write_replay_csv(const std::string& path, double nvar_bound,
                      const std::vector<Vec>& samples) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    const std::size_t n = samples.size();
    const std::size_t d = n ? samples[0].size() : 0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", nvar_bound);
    out << d << "," << n << "," << buf << "\n";
    for (const Vec& s : samples) {
        for (std::size_t j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", s[j]);
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace eig
