#include "core/controls.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace roughpath {

ControlTable::ControlTable(std::vector<double> grid, std::vector<std::vector<double>> entries)
    : grid_(std::move(grid)), entries_(std::move(entries)) {}

ControlTable& ControlTable::add(const ControlTable& other) {
    if (other.points() != points()) throw DimensionError("ControlTable::add: grid mismatch");
    for (int i = 0; i < points(); ++i)
        for (int k = i; k < points(); ++k) entries_[i][k] += other.entries_[i][k];
    return *this;
}

ControlTable control_table(const Germ& germ, double term_power, double time_power,
                           const std::vector<double>& grid) {
    const int m = static_cast<int>(grid.size());
    std::vector<std::vector<double>> f(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int k = i + 1; k < m; ++k) f[i][k] = germ(i, k);
    return control_table_from_matrix(f, term_power, time_power, grid);
}

ControlTable control_table_from_matrix(const std::vector<std::vector<double>>& germ_matrix,
                                       double term_power, double time_power,
                                       const std::vector<double>& grid) {
    const int m = static_cast<int>(grid.size());
    if (static_cast<int>(germ_matrix.size()) != m)
        throw DimensionError("control_table: germ matrix does not match grid");
    if (!(term_power > 0.0)) throw ParameterError("control_table: term power must be positive");

    std::vector<std::vector<double>> term(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            const double fv = germ_matrix[i][k];
            if (fv < 0.0)
                throw ParameterError("control_table: negative germ value at pair (" +
                                     std::to_string(i) + "," + std::to_string(k) + ")");
            const double num = std::pow(fv, term_power);
            const double den = std::pow(grid[k] - grid[i], time_power);
            const double t = num / den;
            if (!std::isfinite(t))
                throw NumericalError("control_table: non-finite partition term at pair (" +
                                     std::to_string(i) + "," + std::to_string(k) + ")");
            term[i][k] = t;
        }
    }

    // first-breakpoint recursion, by increasing interval length
    std::vector<std::vector<double>> w(m, std::vector<double>(m, 0.0));
    for (int len = 1; len < m; ++len) {
        for (int i = 0; i + len < m; ++i) {
            const int k = i + len;
            double best = term[i][k];
            const auto& ti = term[i];
            for (int j = i + 1; j < k; ++j) {
                const double cand = ti[j] + w[j][k];
                if (cand > best) best = cand;
            }
            w[i][k] = best;
        }
    }
    return ControlTable(grid, std::move(w));
}

RoughPathControls rough_path_controls(const RoughPathGrid& path, double gamma, double p) {
    if (!(p >= 0.0) || !(p < gamma))
        throw ParameterError("rough_path_controls: need 0 <= p < gamma");
    const int n = path.level();
    auto norms = path.level_norm_matrices();

    RoughPathControls out;
    out.gamma = gamma;
    out.p = p;
    const double r = p / (gamma - p);
    for (int j = 1; j <= n; ++j) {
        const double q = 1.0 / (j * (gamma - p));
        out.per_level.push_back(control_table_from_matrix(norms[j - 1], q, r, path.times()));
    }
    out.total = out.per_level[0];
    for (int j = 1; j < n; ++j) out.total.add(out.per_level[j]);
    return out;
}

ComparisonCheck check_p_to_zero(const RoughPathGrid& path, double gamma, double p, int i, int k) {
    RoughPathControls at_p = rough_path_controls(path, gamma, p);
    RoughPathControls at_0 = rough_path_controls(path, gamma, 0.0);
    const double dt = path.time(k) - path.time(i);
    ComparisonCheck c;
    c.lhs = std::pow(at_0.total.value(i, k), gamma);
    c.rhs = std::pow(dt, p) * std::pow(at_p.total.value(i, k), gamma - p);
    c.holds = c.lhs <= c.rhs * (1.0 + 1e-12);
    return c;
}

GreedySequence greedy_points(const ControlTable& table, double exponent, double threshold,
                             int a, int b, double max_step_length) {
    if (!(threshold > 0.0)) throw ParameterError("greedy_points: threshold must be positive");
    if (a < 0 || b >= table.points() || a >= b)
        throw IntervalError("greedy_points: invalid interval endpoints");

    GreedySequence seq;
    seq.threshold = threshold;
    seq.indices.push_back(a);
    int cur = a;
    while (cur < b) {
        // budget slice tau -> W(cur, tau)^exponent is monotone in tau
        int hi_limit = b;
        if (max_step_length > 0.0) {
            while (hi_limit > cur + 1 && table.time(hi_limit) - table.time(cur) > max_step_length)
                --hi_limit;
        }
        auto ok = [&](int j) {
            return std::pow(table.value(cur, j), exponent) <= threshold;
        };
        if (!ok(cur + 1)) {
            throw NumericalError("greedy_points: no single-cell step fits budget at cell " +
                                 std::to_string(cur) + " (grid too coarse for this threshold)");
        }
        int lo = cur + 1, hi = hi_limit;
        // binary search for the largest admissible grid point
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (ok(mid))
                lo = mid;
            else
                hi = mid - 1;
        }
        cur = lo;
        seq.indices.push_back(cur);
    }
    return seq;
}

}  // namespace roughpath
