#pragma once

#include <cstddef>
#include <vector>

namespace roughpath {

/// An element of the truncated tensor algebra over R^d, levels 0..N.
/// Level k is a dense block of d^k coefficients, flattened row-major
/// (first tensor slot most significant). Level 0 is a scalar; group
/// elements carry level-0 coefficient 1.
class TensorElement {
public:
    TensorElement() = default;
    TensorElement(int dim, int level);

    static TensorElement unit(int dim, int level);
    /// exp(v) truncated at N: level k holds v^{(x)k} / k!.
    static TensorElement segment_exponential(const std::vector<double>& v, int level);

    int dim() const { return d_; }
    int level() const { return n_; }

    std::vector<double>& block(int k) { return levels_[k]; }
    const std::vector<double>& block(int k) const { return levels_[k]; }
    double scalar() const { return levels_[0][0]; }

    /// Truncated tensor product; level-k block of the result is
    /// sum_{i+j=k} a_i (x) b_j.
    TensorElement mul(const TensorElement& other) const;

    /// Group inverse of 1 + x: 1 - x + x^2 - ... truncated at N.
    TensorElement group_inverse() const;

    TensorElement& add_scaled(const TensorElement& other, double c);
    double max_abs() const;
    double max_abs_diff(const TensorElement& other) const;
    /// Euclidean norm of one level block.
    double level_norm(int k) const;

private:
    int d_ = 0;
    int n_ = 0;
    std::vector<std::vector<double>> levels_;
};

/// Per-cell group increments of a rough path on a time grid. The induced
/// two-parameter functional query(i,k) is the ordered product of cells
/// i..k-1 and is multiplicative by construction.
class RoughPathGrid {
public:
    RoughPathGrid() = default;
    RoughPathGrid(std::vector<double> times, std::vector<TensorElement> cells);

    int dim() const { return d_; }
    int level() const { return n_; }
    int cells() const { return static_cast<int>(cells_.size()); }
    int points() const { return static_cast<int>(times_.size()); }
    const std::vector<double>& times() const { return times_; }
    double time(int i) const { return times_[i]; }
    const TensorElement& cell(int k) const { return cells_[k]; }

    /// Group increment over [t_i, t_k]; unit for i == k.
    TensorElement query(int i, int k) const;

    /// norms[j-1][i][k] = Euclidean norm of level-j of query(i,k), for
    /// 1 <= j <= level. Built with one ordered-product sweep per row.
    std::vector<std::vector<std::vector<double>>> level_norm_matrices() const;

private:
    int d_ = 0;
    int n_ = 0;
    std::vector<double> times_;
    std::vector<TensorElement> cells_;
};

}  // namespace roughpath
