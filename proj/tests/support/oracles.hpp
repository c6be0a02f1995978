// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "core/tensor.hpp"

namespace testsupport {

/// Exhaustive partition supremum: enumerates every subset of interior grid
/// points between i and k and takes the best partition sum. Exponent
/// conventions match the control tables (term f^q / dt^r).
inline double brute_force_partition_sup(const std::function<double(int, int)>& germ,
                                        const std::vector<double>& grid, double q, double r,
                                        int i, int k) {
    const int interior = k - i - 1;
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << interior); ++mask) {
        std::vector<int> pts{i};
        for (int b = 0; b < interior; ++b)
            if (mask & (1u << b)) pts.push_back(i + 1 + b);
        pts.push_back(k);
        double sum = 0.0;
        for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
            const double f = germ(pts[s], pts[s + 1]);
            sum += std::pow(f, q) / std::pow(grid[pts[s + 1]] - grid[pts[s]], r);
        }
        best = std::max(best, sum);
    }
    return best;
}

/// Signature of a piecewise-linear path by direct segment-exponential
/// concatenation (independent route for query checks).
inline roughpath::TensorElement signature_of_polyline(
    const std::vector<std::vector<double>>& points, int level) {
    const int d = static_cast<int>(points[0].size());
    roughpath::TensorElement acc = roughpath::TensorElement::unit(d, level);
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        std::vector<double> inc(d);
        for (int c = 0; c < d; ++c) inc[c] = points[s + 1][c] - points[s][c];
        acc = acc.mul(roughpath::TensorElement::segment_exponential(inc, level));
    }
    return acc;
}

/// Deterministic pseudo-random germ values for DP-vs-brute-force matrices.
inline std::vector<std::vector<double>> random_germ_matrix(int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> f(points, std::vector<double>(points, 0.0));
    for (int i = 0; i < points; ++i)
        for (int k = i + 1; k < points; ++k) f[i][k] = unif(rng);
    return f;
}

}  // namespace testsupport
