#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "eig/error.hpp"

namespace eig {

using Vec = std::vector<double>;
using Rng = std::mt19937_64;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

/// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vec& x, double alpha) {
    for (double& v : x) v *= alpha;
}

inline Vec scaled(const Vec& x, double alpha) {
    Vec y = x;
    scale(y, alpha);
    return y;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline void normalize(Vec& x) {
    double n = norm(x);
    if (n == 0.0) throw Error("cannot normalize zero vector");
    scale(x, 1.0 / n);
}

inline Vec normalized(const Vec& x) {
    Vec y = x;
    normalize(y);
    return y;
}

inline bool all_finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

inline void require_finite(const Vec& x, const char* what) {
    if (!all_finite(x)) throw Error(std::string("non-finite entry in ") + what);
}

inline void require_dim(const Vec& x, std::size_t d, const char* what) {
    if (x.size() != d)
        throw DimensionError(std::string(what) + ": expected length " +
                             std::to_string(d) + ", got " + std::to_string(x.size()));
}

/// Standard normal vector of length d.
inline Vec gaussian_vec(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec x(d);
    for (double& v : x) v = normal(rng);
    return x;
}

} // namespace eig
