#include "core/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace roughpath {

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

}  // namespace

TensorElement::TensorElement(int dim, int level) : d_(dim), n_(level) {
    if (dim < 1) throw DimensionError("TensorElement: dimension must be positive");
    if (level < 1 || level > 3)
        throw DimensionError("TensorElement: truncation level must be in {1,2,3}");
    levels_.resize(static_cast<std::size_t>(level) + 1);
    for (int k = 0; k <= level; ++k) levels_[k].assign(ipow(dim, k), 0.0);
}

TensorElement TensorElement::unit(int dim, int level) {
    TensorElement e(dim, level);
    e.levels_[0][0] = 1.0;
    return e;
}

TensorElement TensorElement::segment_exponential(const std::vector<double>& v, int level) {
    const int d = static_cast<int>(v.size());
    TensorElement e = unit(d, level);
    if (level >= 1) e.levels_[1] = v;
    // level k holds v^{(x)k}/k!; the previous block already carries 1/(k-1)!
    for (int k = 2; k <= level; ++k) {
        const auto& prev = e.levels_[k - 1];
        auto& cur = e.levels_[k];
        for (std::size_t a = 0; a < prev.size(); ++a)
            for (int b = 0; b < d; ++b)
                cur[a * d + b] = prev[a] * v[b] / k;
    }
    return e;
}

TensorElement TensorElement::mul(const TensorElement& other) const {
    if (d_ != other.d_ || n_ != other.n_)
        throw DimensionError("tensor product: mismatched dimension or truncation level");
    TensorElement out(d_, n_);
    for (int k = 0; k <= n_; ++k) {
        auto& dst = out.levels_[k];
        for (int i = 0; i <= k; ++i) {
            const auto& a = levels_[i];
            const auto& b = other.levels_[k - i];
            for (std::size_t ia = 0; ia < a.size(); ++ia) {
                const double av = a[ia];
                if (av == 0.0) continue;
                const std::size_t off = ia * b.size();
                for (std::size_t ib = 0; ib < b.size(); ++ib)
                    dst[off + ib] += av * b[ib];
            }
        }
    }
    return out;
}

TensorElement TensorElement::group_inverse() const {
    // x = this - 1; inverse = 1 - x + x^2 - x^3 (truncation kills higher terms).
    TensorElement x = *this;
    x.levels_[0][0] -= 1.0;
    TensorElement out = unit(d_, n_);
    TensorElement p = x;
    double sign = -1.0;
    for (int k = 1; k <= n_; ++k) {
        out.add_scaled(p, sign);
        sign = -sign;
        if (k < n_) p = p.mul(x);
    }
    return out;
}

TensorElement& TensorElement::add_scaled(const TensorElement& other, double c) {
    if (d_ != other.d_ || n_ != other.n_)
        throw DimensionError("tensor add: mismatched dimension or truncation level");
    for (int k = 0; k <= n_; ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i)
            levels_[k][i] += c * other.levels_[k][i];
    return *this;
}

double TensorElement::max_abs() const {
    double m = 0.0;
    for (const auto& blk : levels_)
        for (double v : blk) m = std::max(m, std::abs(v));
    return m;
}

double TensorElement::max_abs_diff(const TensorElement& other) const {
    double m = 0.0;
    for (int k = 0; k <= n_; ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i)
            m = std::max(m, std::abs(levels_[k][i] - other.levels_[k][i]));
    return m;
}

double TensorElement::level_norm(int k) const {
    double s = 0.0;
    for (double v : levels_[k]) s += v * v;
    return std::sqrt(s);
}

RoughPathGrid::RoughPathGrid(std::vector<double> times, std::vector<TensorElement> cells)
    : times_(std::move(times)), cells_(std::move(cells)) {
    if (times_.size() != cells_.size() + 1)
        throw DimensionError("RoughPathGrid: need one cell per consecutive grid pair");
    for (std::size_t i = 0; i + 1 < times_.size(); ++i)
        if (!(times_[i] < times_[i + 1]))
            throw IntervalError("RoughPathGrid: grid times must be strictly increasing");
    if (cells_.empty()) throw DimensionError("RoughPathGrid: empty grid");
    d_ = cells_[0].dim();
    n_ = cells_[0].level();
    for (const auto& c : cells_) {
        if (c.dim() != d_ || c.level() != n_)
            throw DimensionError("RoughPathGrid: inhomogeneous cells");
        if (std::abs(c.scalar() - 1.0) > 1e-14)
            throw NumericalError("RoughPathGrid: cell is not a group element (level-0 != 1)");
    }
}

TensorElement RoughPathGrid::query(int i, int k) const {
    if (i > k) throw IntervalError("query_increment: need i <= k, got i=" +
                                   std::to_string(i) + " k=" + std::to_string(k));
    if (k >= points()) throw IntervalError("query_increment: index past end of grid");
    TensorElement acc = TensorElement::unit(d_, n_);
    for (int j = i; j < k; ++j) acc = acc.mul(cells_[j]);
    return acc;
}

std::vector<std::vector<std::vector<double>>> RoughPathGrid::level_norm_matrices() const {
    const int m = points();
    std::vector<std::vector<std::vector<double>>> out(
        n_, std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)));
    for (int i = 0; i < m; ++i) {
        TensorElement acc = TensorElement::unit(d_, n_);
        for (int k = i + 1; k < m; ++k) {
            acc = acc.mul(cells_[k - 1]);
            for (int j = 1; j <= n_; ++j) out[j - 1][i][k] = acc.level_norm(j);
        }
    }
    return out;
}

}  // namespace roughpath
