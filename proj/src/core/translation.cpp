#include "core/translation.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace roughpath {

const std::array<std::string, 4> kLevel2Trees = {"xx", "hx", "xh", "hh"};
const std::array<std::string, 8> kLevel3Trees = {"xxx", "xxh", "xhx", "hxx",
                                                 "xhh", "hxh", "hhx", "hhh"};

namespace {

// Names read outside-in: name[0] is the root (integrator), the last letter is
// the innermost integrand; tensor slots run inside-out, left to right.
char root_letter(const std::string& name) { return name.front(); }
char inner_letter(const std::string& name) { return name.back(); }
char middle_letter(const std::string& name) { return name[1]; }

}  // namespace

TranslatedPath::TranslatedPath(const RoughPathGrid& base, const PathSamples& shift) {
    if (shift.points() != base.points())
        throw DimensionError("translate: shift must be sampled on the driver grid");
    if (shift.dim() != base.dim())
        throw DimensionError("translate: shift dimension mismatch");
    const int m = base.cells();
    const int d = base.dim();
    times_ = base.times();
    dx_.assign(m, std::vector<double>(d));
    dh_.assign(m, std::vector<double>(d));
    base_cells_.reserve(m);
    for (int k = 0; k < m; ++k) {
        base_cells_.push_back(base.cell(k));
        dx_[k] = base.cell(k).block(1);
        for (int c = 0; c < d; ++c)
            dh_[k][c] = shift.values[k + 1][c] - shift.values[k][c];
    }
    path_ = build(base);
}

std::vector<double> TranslatedPath::two_tree_cell(char inner, char root, int cell) const {
    const int d = dim();
    if (inner == 'x' && root == 'x') return base_cells_[cell].block(2);
    const auto& b = inner == 'x' ? dx_[cell] : dh_[cell];
    const auto& r = root == 'x' ? dx_[cell] : dh_[cell];
    std::vector<double> out(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i * d + j] = 0.5 * b[i] * r[j];
    return out;
}

std::vector<double> TranslatedPath::three_tree_cell(char inner, char mid, char root,
                                                    int cell) const {
    const int d = dim();
    if (inner == 'x' && mid == 'x' && root == 'x') return base_cells_[cell].block(3);
    // within-cell value for piecewise-linear segments: the inner 2-tree grows
    // quadratically in the cell parameter, so its time average is 1/3 of the
    // cell value
    const std::vector<double> two = two_tree_cell(inner, mid, cell);
    const auto& r = root == 'x' ? dx_[cell] : dh_[cell];
    std::vector<double> out(d * d * d);
    for (int ij = 0; ij < d * d; ++ij)
        for (int k = 0; k < d; ++k) out[ij * d + k] = two[ij] * r[k] / 3.0;
    return out;
}

std::vector<double> TranslatedPath::tree_term(const std::string& name, int i, int k) const {
    const int d = dim();
    if (i > k || k >= static_cast<int>(times_.size()))
        throw IntervalError("tree_term: invalid interval");
    if (name.size() == 2) {
        const char b = inner_letter(name);
        const char r = root_letter(name);
        std::vector<double> acc(d * d, 0.0);
        std::vector<double> b1(d, 0.0);  // level-1 of the inner letter from t_i
        for (int m = i; m < k; ++m) {
            const std::vector<double> atom = two_tree_cell(b, r, m);
            const auto& dr = r == 'x' ? dx_[m] : dh_[m];
            const auto& db = b == 'x' ? dx_[m] : dh_[m];
            for (int a = 0; a < d; ++a)
                for (int c = 0; c < d; ++c)
                    acc[a * d + c] += atom[a * d + c] + b1[a] * dr[c];
            for (int a = 0; a < d; ++a) b1[a] += db[a];
        }
        return acc;
    }
    if (name.size() == 3) {
        const char b = inner_letter(name);
        const char c = middle_letter(name);
        const char r = root_letter(name);
        std::vector<double> acc(d * d * d, 0.0);
        std::vector<double> two(d * d, 0.0);  // running [c[b]] from t_i
        std::vector<double> b1(d, 0.0);
        for (int m = i; m < k; ++m) {
            const auto& dr = r == 'x' ? dx_[m] : dh_[m];
            const auto& db = b == 'x' ? dx_[m] : dh_[m];
            const auto& dc = c == 'x' ? dx_[m] : dh_[m];
            const std::vector<double> atom3 = three_tree_cell(b, c, r, m);
            const std::vector<double> atom_rc = two_tree_cell(c, r, m);
            for (int a = 0; a < d; ++a)
                for (int e = 0; e < d; ++e)
                    for (int f = 0; f < d; ++f)
                        acc[(a * d + e) * d + f] += atom3[(a * d + e) * d + f] +
                                                    two[a * d + e] * dr[f] +
                                                    b1[a] * atom_rc[e * d + f];
            const std::vector<double> atom2 = two_tree_cell(b, c, m);
            for (int a = 0; a < d; ++a)
                for (int e = 0; e < d; ++e) two[a * d + e] += atom2[a * d + e] + b1[a] * dc[e];
            for (int a = 0; a < d; ++a) b1[a] += db[a];
        }
        return acc;
    }
    throw ParameterError("tree_term: unknown tree name " + name);
}

std::vector<double> TranslatedPath::direct_level(int level, int i, int k) const {
    const int d = dim();
    if (level == 1) {
        std::vector<double> acc(d, 0.0);
        for (int m = i; m < k; ++m)
            for (int c = 0; c < d; ++c) acc[c] += dx_[m][c] + dh_[m][c];
        return acc;
    }
    if (level == 2) {
        std::vector<double> acc(d * d, 0.0);
        for (const auto& name : kLevel2Trees) {
            const std::vector<double> t = tree_term(name, i, k);
            for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += t[q];
        }
        return acc;
    }
    if (level == 3) {
        std::vector<double> acc(d * d * d, 0.0);
        for (const auto& name : kLevel3Trees) {
            const std::vector<double> t = tree_term(name, i, k);
            for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += t[q];
        }
        return acc;
    }
    throw ParameterError("direct_level: level must be 1, 2 or 3");
}

RoughPathGrid TranslatedPath::build(const RoughPathGrid& base) {
    const int m = base.cells();
    const int d = base.dim();
    const int n = base.level();
    std::vector<TensorElement> cells;
    cells.reserve(m);
    for (int k = 0; k < m; ++k) {
        TensorElement cell = TensorElement::unit(d, n);
        for (int c = 0; c < d; ++c) cell.block(1)[c] = dx_[k][c] + dh_[k][c];
        if (n >= 2) {
            auto& blk = cell.block(2);
            for (const auto& name : kLevel2Trees) {
                const std::vector<double> t = two_tree_cell(inner_letter(name), root_letter(name), k);
                for (std::size_t q = 0; q < blk.size(); ++q) blk[q] += t[q];
            }
        }
        if (n >= 3) {
            auto& blk = cell.block(3);
            for (const auto& name : kLevel3Trees) {
                const std::vector<double> t =
                    three_tree_cell(inner_letter(name), middle_letter(name), root_letter(name), k);
                for (std::size_t q = 0; q < blk.size(); ++q) blk[q] += t[q];
            }
        }
        cells.push_back(std::move(cell));
    }
    return RoughPathGrid(times_, std::move(cells));
}

TranslatedPath translate(const RoughPathGrid& base, const PathSamples& shift) {
    return TranslatedPath(base, shift);
}

TranslationControlReport translated_control_check(const RoughPathGrid& base,
                                                  const PathSamples& shift, double gamma, double p,
                                                  double gamma_prime) {
    if (!(gamma_prime > gamma) || !(gamma + gamma_prime > 1.0))
        throw ParameterError("translated_control_check: need gamma' > gamma and gamma + gamma' > 1");
    if (base.level() >= 3 && !(2.0 * gamma + gamma_prime > 1.0))
        throw ParameterError("translated_control_check: level 3 needs 2 gamma + gamma' > 1");

    TranslatedPath t(base, shift);
    RoughPathControls wt = rough_path_controls(t.path(), gamma, p);
    RoughPathControls wx = rough_path_controls(base, gamma, p);
    RoughPathControls wh = rough_path_controls(lift_path(shift, base.level()), gamma_prime, p);

    const int m = base.points();
    const double gp = gamma - p;
    const double gpp = gamma_prime - p;
    TranslationControlReport rep;
    rep.per_level_constant.assign(base.level(), 0.0);
    for (int i = 0; i < m; ++i)
        for (int k = i + 1; k < m; ++k) {
            for (int j = 0; j < base.level(); ++j) {
                const double lhs = wt.per_level[j].value(i, k);
                const double rhs = wx.per_level[j].value(i, k) +
                                   std::pow(wh.per_level[j].value(i, k), gpp / gp);
                if (rhs > 0.0)
                    rep.per_level_constant[j] = std::max(rep.per_level_constant[j], lhs / rhs);
            }
            const double lhs = std::pow(wt.total.value(i, k), gp);
            const double rhs =
                std::pow(wx.total.value(i, k), gp) + std::pow(wh.total.value(i, k), gpp);
            if (rhs > 0.0) rep.total_constant = std::max(rep.total_constant, lhs / rhs);
        }
    return rep;
}

HnormCheck hnorm_control_check(const CMElement& h, const std::vector<double>& grid, int level,
                               double gamma_prime, double p) {
    PathSamples hs = h.sample_on_grid(grid);
    RoughPathControls wh = rough_path_controls(lift_path(hs, level), gamma_prime, p);
    HnormCheck out;
    out.control_value = wh.total.total();
    out.hnorm_power = std::pow(cm_norm(h), 1.0 / (gamma_prime - p));
    out.ratio = out.hnorm_power > 0.0 ? out.control_value / out.hnorm_power
                                      : (out.control_value > 0.0 ? INFINITY : 0.0);
    return out;
}

ControlTable mixed_level2_control(const TranslatedPath& t, double gamma, double gamma_prime,
                                  double p) {
    const double bar = 0.5 * (gamma + gamma_prime);
    const double q = 1.0 / (2.0 * (bar - p));
    const double r = p / (bar - p);
    const std::vector<double>& grid = t.path().times();
    Germ germ = [&t](int i, int k) {
        if (i == k) return 0.0;
        const std::vector<double> v = t.tree_term("hx", i, k);
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };
    return control_table(germ, q, r, grid);
}

}  // namespace roughpath
