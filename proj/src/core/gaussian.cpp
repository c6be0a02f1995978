#include "core/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>

#include "core/errors.hpp"

namespace roughpath {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t sample_index) {
    // splitmix64 finalizer over master ^ golden-ratio-multiplied index
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (sample_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double fbm_covariance(double s, double t, double hurst) {
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

FbmSampler::FbmSampler(double hurst, std::vector<double> grid, int dim)
    : hurst_(hurst), grid_(std::move(grid)), dim_(dim) {
    if (!(hurst > 0.25) || !(hurst <= 0.5))
        throw ParameterError("FbmSampler: Hurst index must lie in (1/4, 1/2]");
    if (dim_ < 1) throw DimensionError("FbmSampler: dimension must be positive");
    if (grid_.size() < 2) throw IntervalError("FbmSampler: need at least two grid points");
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
        if (!(grid_[i] < grid_[i + 1]))
            throw IntervalError("FbmSampler: grid must be strictly increasing");
    if (grid_[0] < 0.0) throw IntervalError("FbmSampler: grid must start at t >= 0");

    // X(t_0) is pinned (zero when t_0 = 0); factorize the covariance of the rest
    const int n = static_cast<int>(grid_.size()) - 1;
    Eigen::MatrixXd R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = fbm_covariance(grid_[i + 1], grid_[j + 1], hurst_);
            if (grid_[0] > 0.0) {
                // condition on X(t_0) = 0 is not modeled; only t_0 = 0 supported
                throw IntervalError("FbmSampler: grid must start at 0 (X_0 = 0)");
            }
            R(i, j) = v;
            R(j, i) = v;
        }

    Eigen::LLT<Eigen::MatrixXd> llt(R);
    if (llt.info() != Eigen::Success) {
        const double jitter = 1e-12 * R.diagonal().maxCoeff();
        Eigen::MatrixXd Rj = R + jitter * Eigen::MatrixXd::Identity(n, n);
        llt.compute(Rj);
        if (llt.info() != Eigen::Success) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
            throw NumericalError("FbmSampler: covariance not positive definite, smallest eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
        }
    }
    Eigen::MatrixXd L = llt.matrixL();
    chol_.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) chol_[i][j] = L(i, j);
}

PathSamples FbmSampler::sample(std::uint64_t seed) const {
    const int n = static_cast<int>(grid_.size()) - 1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    PathSamples out;
    out.times = grid_;
    out.hurst = hurst_;
    out.seed = seed;
    out.values.assign(grid_.size(), std::vector<double>(dim_, 0.0));

    std::vector<double> z(n);
    for (int c = 0; c < dim_; ++c) {
        for (int i = 0; i < n; ++i) z[i] = gauss(rng);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            const auto& row = chol_[i];
            for (int j = 0; j <= i; ++j) acc += row[j] * z[j];
            out.values[i + 1][c] = acc;
        }
    }
    return out;
}

std::vector<double> uniform_grid(double t0, double t1, int cells) {
    if (cells < 1) throw IntervalError("uniform_grid: need at least one cell");
    std::vector<double> g(cells + 1);
    for (int i = 0; i <= cells; ++i) g[i] = t0 + (t1 - t0) * i / cells;
    return g;
}

RoughPathGrid lift_path(const PathSamples& path, int level) {
    const int m = path.points() - 1;
    const int d = path.dim();
    std::vector<TensorElement> cells;
    cells.reserve(m);
    std::vector<double> dx(d);
    for (int k = 0; k < m; ++k) {
        for (int c = 0; c < d; ++c) dx[c] = path.values[k + 1][c] - path.values[k][c];
        cells.push_back(TensorElement::segment_exponential(dx, level));
    }
    return RoughPathGrid(path.times, std::move(cells));
}

std::vector<double> CMElement::evaluate(double t) const {
    std::vector<double> v(dim(), 0.0);
    for (int c = 0; c < dim(); ++c)
        for (std::size_t i = 0; i < knots.size(); ++i)
            v[c] += coeffs[c][i] * fbm_covariance(knots[i], t, hurst);
    return v;
}

PathSamples CMElement::sample_on_grid(const std::vector<double>& grid) const {
    PathSamples p;
    p.times = grid;
    p.hurst = hurst;
    p.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) p.values[i] = evaluate(grid[i]);
    return p;
}

double cm_norm(const CMElement& h) {
    double q = 0.0;
    for (int c = 0; c < h.dim(); ++c) {
        if (h.coeffs[c].size() != h.knots.size())
            throw DimensionError("cm_norm: coefficient/knot size mismatch");
        for (std::size_t i = 0; i < h.knots.size(); ++i)
            for (std::size_t j = 0; j < h.knots.size(); ++j)
                q += h.coeffs[c][i] * h.coeffs[c][j] * fbm_covariance(h.knots[i], h.knots[j], h.hurst);
    }
    if (q < -1e-10) throw NumericalError("cm_norm: Gram quadratic form is negative");
    return std::sqrt(std::max(q, 0.0));
}

}  // namespace roughpath
