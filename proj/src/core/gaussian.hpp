#pragma once

#include <cstdint>
#include <vector>

#include "core/tensor.hpp"

namespace roughpath {

/// A d-dimensional path sampled on a time grid, X(t_0) = 0 componentwise.
struct PathSamples {
    std::vector<double> times;                // m+1 points
    std::vector<std::vector<double>> values;  // values[i] in R^d
    double hurst = 0.5;
    std::uint64_t seed = 0;

    int points() const { return static_cast<int>(times.size()); }
    int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
};

/// Deterministic per-sample seed derivation (splitmix-style mix of master
/// seed and sample index); documented splitting rule for parallel ensembles.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t sample_index);

/// fBm covariance R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double fbm_covariance(double s, double t, double hurst);

/// Exact-covariance fBm sampler: one Cholesky factorization per grid,
/// reused across draws. Components are independent.
class FbmSampler {
public:
    FbmSampler(double hurst, std::vector<double> grid, int dim);

    /// Reproducible draw: identical (sampler, seed) pairs give bit-identical paths.
    PathSamples sample(std::uint64_t seed) const;

    const std::vector<double>& grid() const { return grid_; }
    double hurst() const { return hurst_; }
    int dim() const { return dim_; }

private:
    double hurst_;
    std::vector<double> grid_;
    int dim_;
    std::vector<std::vector<double>> chol_;  // lower factor of R on grid[1..]
};

std::vector<double> uniform_grid(double t0, double t1, int cells);

/// Canonical weakly geometric lift of the piecewise-linear interpolation:
/// cell k holds segment_exponential of the increment over cell k.
RoughPathGrid lift_path(const PathSamples& path, int level);

/// Cameron-Martin element in the reproducing-kernel span:
/// h_j(t) = sum_i c[j][i] R(knots[i], t), one coefficient sequence per component.
struct CMElement {
    std::vector<double> knots;
    std::vector<std::vector<double>> coeffs;  // coeffs[component][knot]
    double hurst = 0.5;

    int dim() const { return static_cast<int>(coeffs.size()); }
    /// h(t), componentwise.
    std::vector<double> evaluate(double t) const;
    PathSamples sample_on_grid(const std::vector<double>& grid) const;
};

/// |h|_H = sqrt(sum_j c_j^T Gram c_j) with Gram_{ii'} = R(s_i, s_i').
double cm_norm(const CMElement& h);

}  // namespace roughpath
