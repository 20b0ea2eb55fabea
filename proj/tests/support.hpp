#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "gpick/types.hpp"

namespace gpick::testing {

/// Seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Complex gaussian() {
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(rng_);
        return {re, n(rng_)};
    }
    Complex disk(double radius = 1.0) {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, 2.0 * std::numbers::pi * uniform());
    }
    Complex circle() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }
    /// A point of G with both roots of modulus at most `radius`.
    GPoint point(double radius = 0.95) {
        const Complex z1 = disk(radius);
        const Complex z2 = disk(radius);
        return {z1 + z2, z1 * z2};
    }
    NodeSet nodes(int count, double radius = 0.95) {
        NodeSet out;
        for (int k = 0; k < count; ++k) out.push_back(point(radius));
        return out;
    }
    CMatrix matrix(int rows, int cols) {
        CMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = gaussian();
        return m;
    }
    CMatrix psd(int n, int rank) {
        const CMatrix b = matrix(n, rank);
        return b * b.adjoint();
    }

private:
    std::mt19937_64 rng_;
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace gpick::testing
