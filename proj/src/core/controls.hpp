#pragma once

#include <functional>
#include <vector>

#include "core/tensor.hpp"

namespace roughpath {

/// Partition-sup control function values W(t_i, t_k) on a grid, all pairs
/// i <= k. Entries store raw W; power laws like W^{gamma-p} are applied by
/// callers at the use site. Superadditive: W(i,j) + W(j,k) <= W(i,k).
class ControlTable {
public:
    ControlTable() = default;
    ControlTable(std::vector<double> grid, std::vector<std::vector<double>> entries);

    int points() const { return static_cast<int>(grid_.size()); }
    const std::vector<double>& grid() const { return grid_; }
    double time(int i) const { return grid_[i]; }
    double value(int i, int k) const { return entries_[i][k]; }
    double total() const { return entries_.front().back(); }

    ControlTable& add(const ControlTable& other);

private:
    std::vector<double> grid_;
    std::vector<std::vector<double>> entries_;  // upper triangle, [i][k] for i <= k
};

/// Two-parameter nonnegative germ on grid index pairs, f(i,i) = 0.
using Germ = std::function<double(int, int)>;

/// Partition-sup dynamic program over grid partitions:
///   W(i,k) = max over partitions of [t_i,t_k] of sum f(a,b)^q / (t_b-t_a)^r,
/// via the first-breakpoint recursion W(i,k) = max_j term(i,j) + W(j,k).
ControlTable control_table(const Germ& germ, double term_power, double time_power,
                           const std::vector<double>& grid);

/// As control_table with a precomputed germ matrix f[i][k].
ControlTable control_table_from_matrix(const std::vector<std::vector<double>>& germ_matrix,
                                       double term_power, double time_power,
                                       const std::vector<double>& grid);

/// Per-level tables for a rough path and their sum: level j uses the germ
/// |Pi^j(query)| (Euclidean) with exponents q = 1/(j(gamma-p)), r = p/(gamma-p).
struct RoughPathControls {
    std::vector<ControlTable> per_level;  // index j-1
    ControlTable total;
    double gamma = 0.0;
    double p = 0.0;
};

RoughPathControls rough_path_controls(const RoughPathGrid& path, double gamma, double p);

struct ComparisonCheck {
    bool holds;
    double lhs;
    double rhs;
};

/// Verifies W_{gamma,0}^gamma(s,t) <= (t-s)^p W_{gamma,p}^{gamma-p}(s,t) for
/// the total controls of a path. Diagnostic only, never used inside solvers.
ComparisonCheck check_p_to_zero(const RoughPathGrid& path, double gamma, double p, int i, int k);

/// Greedy partition of [grid[a], grid[b]]: each step ends at the largest grid
/// point whose budget W(tau_m, tau)^{exponent} stays below the threshold.
struct GreedySequence {
    double threshold = 0.0;
    std::vector<int> indices;  // tau_0 = a < ... < tau_count = b, grid indices
    int count() const { return static_cast<int>(indices.size()) - 1; }
};

GreedySequence greedy_points(const ControlTable& table, double exponent, double threshold,
                             int a, int b, double max_step_length = 0.0);

}  // namespace roughpath
