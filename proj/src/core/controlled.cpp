#include "core/controlled.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace roughpath {

namespace {

int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

TensorBlock contract_leading(const TensorBlock& block, const std::vector<double>& tensor,
                             int dim, int contract_rank) {
    const int csize = ipow(dim, contract_rank);
    if (static_cast<int>(tensor.size()) != csize)
        throw DimensionError("contract_leading: tensor size does not match contraction rank");
    if (block.size() % static_cast<std::size_t>(csize) != 0)
        throw DimensionError("contract_leading: block size not divisible by contraction size");
    const int rest = static_cast<int>(block.size()) / csize;
    const int modes = block.empty() ? 0 : block[0].modes();
    TensorBlock out(rest, SpectralElement(modes));
    for (int a = 0; a < csize; ++a) {
        const double w = tensor[a];
        if (w == 0.0) continue;
        for (int b = 0; b < rest; ++b) {
            const auto& src = block[a * rest + b].coef;
            auto& dst = out[b].coef;
            for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += w * src[k];
        }
    }
    return out;
}

ControlledPath::ControlledPath(ControlledVariant variant, ControlledParams params,
                               std::shared_ptr<const RoughPathGrid> driver,
                               std::shared_ptr<const SpectralScale> scale, int first_index,
                               int last_index)
    : variant_(variant),
      params_(params),
      driver_(std::move(driver)),
      scale_(std::move(scale)),
      first_(first_index),
      last_(last_index) {
    if (params_.levels < 1 || params_.levels > 3)
        throw ParameterError("ControlledPath: level count must be in {1,2,3}");
    if (params_.dim != driver_->dim())
        throw DimensionError("ControlledPath: dimension does not match the driving path");
    if (first_ < 0 || last_ >= driver_->points() || first_ >= last_)
        throw IntervalError("ControlledPath: invalid grid range");
    levels_.resize(params_.levels);
    for (int j = 0; j < params_.levels; ++j)
        levels_[j].assign(time_points(), TensorBlock(block_size(j), SpectralElement(scale_->modes())));
}

ControlledPath ControlledPath::zero(ControlledVariant variant, ControlledParams params,
                                    std::shared_ptr<const RoughPathGrid> driver,
                                    std::shared_ptr<const SpectralScale> scale, int first_index,
                                    int last_index) {
    return ControlledPath(variant, params, std::move(driver), std::move(scale), first_index,
                          last_index);
}

int ControlledPath::rank(int j) const {
    return variant_ == ControlledVariant::Base ? j + 1 : j;
}

int ControlledPath::block_size(int j) const { return ipow(params_.dim, rank(j)); }

double ControlledPath::level_alpha(int j) const {
    const double base = params_.alpha - j * params_.gamma;
    return variant_ == ControlledVariant::Base ? base - params_.sigma : base;
}

const TensorBlock& ControlledPath::at(int j, int time_index) const {
    return levels_[j][time_index - first_];
}

TensorBlock& ControlledPath::at(int j, int time_index) { return levels_[j][time_index - first_]; }

void ControlledPath::set(int j, int time_index, TensorBlock value) {
    if (static_cast<int>(value.size()) != block_size(j))
        throw DimensionError("ControlledPath::set: wrong tensor block size");
    levels_[j][time_index - first_] = std::move(value);
}

TensorBlock ControlledPath::remainder(int i, int l, int s_index, int t_index) const {
    if (i < 0 || i >= params_.levels || l <= i || l > params_.levels)
        throw ParameterError("remainder: index out of range");
    TensorBlock r = at(i, t_index);
    const TensorBlock& base = at(i, s_index);
    for (std::size_t a = 0; a < r.size(); ++a) r[a] -= base[a];
    if (l > i + 1) {
        const TensorElement inc = driver_->query(s_index, t_index);
        for (int j = i + 1; j < l; ++j) {
            TensorBlock term = contract_leading(at(j, s_index), inc.block(j - i), params_.dim, j - i);
            for (std::size_t a = 0; a < r.size(); ++a) r[a] -= term[a];
        }
    }
    return r;
}

ControlledPath ControlledPath::operator+(const ControlledPath& o) const {
    ControlledPath out = *this;
    for (int j = 0; j < params_.levels; ++j)
        for (int t = 0; t < time_points(); ++t)
            for (int a = 0; a < block_size(j); ++a) out.levels_[j][t][a] += o.levels_[j][t][a];
    return out;
}

ControlledPath ControlledPath::operator-(const ControlledPath& o) const {
    ControlledPath out = *this;
    for (int j = 0; j < params_.levels; ++j)
        for (int t = 0; t < time_points(); ++t)
            for (int a = 0; a < block_size(j); ++a) out.levels_[j][t][a] -= o.levels_[j][t][a];
    return out;
}

ControlledPath ControlledPath::scaled(double c) const {
    ControlledPath out = *this;
    for (auto& level : out.levels_)
        for (auto& block : level)
            for (auto& el : block) el *= c;
    return out;
}

ControlledPath ControlledPath::shift_to_tilde() const {
    if (variant_ != ControlledVariant::Base)
        throw ParameterError("shift: input must be a Base-variant path");
    ControlledPath out(ControlledVariant::Tilde, params_, driver_, scale_, first_, last_);
    for (int i = 1; i < params_.levels; ++i) out.levels_[i] = levels_[i - 1];
    return out;
}

double block_alpha_norm(const SpectralScale& scale, const TensorBlock& block, double alpha) {
    double m = 0.0;
    for (const auto& el : block) m = std::max(m, scale.alpha_norm(el, alpha));
    return m;
}

const ControlTable& RemainderControls::kind2_with_convention(int i, int l) const {
    if (l == i + 1) return consecutive[i];
    return kind2.at({i, l});
}

RemainderControls remainder_controls(const ControlledPath& xi, int first_index, int last_index) {
    const auto& prm = xi.params();
    const int n = prm.levels;
    const int d = prm.dim;
    const double gp = prm.gamma - prm.p;
    const double sigma_off = xi.variant() == ControlledVariant::Base ? prm.sigma : 0.0;
    if (first_index < xi.first_index() || last_index > xi.last_index() || first_index >= last_index)
        throw IntervalError("remainder_controls: range outside the path's grid range");

    const int npts = last_index - first_index + 1;
    const std::vector<double> grid(xi.driver().times().begin() + first_index,
                                   xi.driver().times().begin() + last_index + 1);

    // germ matrices for every remainder family, filled in one ordered-product sweep
    std::vector<std::vector<std::vector<double>>> consec(
        n, std::vector<std::vector<double>>(npts, std::vector<double>(npts, 0.0)));
    std::map<std::pair<int, int>, std::vector<std::vector<double>>> g1, g2;
    for (int i = 0; i < n; ++i)
        for (int l = i + 2; l <= n; ++l) {
            g1[{i, l}].assign(npts, std::vector<double>(npts, 0.0));
            g2[{i, l}].assign(npts, std::vector<double>(npts, 0.0));
        }

    const SpectralScale& scale = xi.scale();
    for (int a = 0; a < npts; ++a) {
        const int s_idx = first_index + a;
        TensorElement acc = TensorElement::unit(d, xi.driver().level());
        for (int b = a + 1; b < npts; ++b) {
            const int t_idx = first_index + b;
            acc = acc.mul(xi.driver().cell(t_idx - 1));
            for (int i = 0; i < n; ++i) {
                // running remainder: start from delta xi^i, strip expansion terms
                TensorBlock r = xi.at(i, t_idx);
                const TensorBlock& base = xi.at(i, s_idx);
                for (std::size_t q = 0; q < r.size(); ++q) r[q] -= base[q];
                consec[i][a][b] =
                    block_alpha_norm(scale, r, prm.alpha - (i + 1) * prm.gamma - sigma_off);
                for (int l = i + 2; l <= n; ++l) {
                    const int j = l - 1;
                    TensorBlock term =
                        contract_leading(xi.at(j, s_idx), acc.block(j - i), d, j - i);
                    for (std::size_t q = 0; q < r.size(); ++q) r[q] -= term[q];
                    g1[{i, l}][a][b] =
                        block_alpha_norm(scale, r, prm.alpha - (l - 1) * prm.gamma - sigma_off);
                    g2[{i, l}][a][b] =
                        block_alpha_norm(scale, r, prm.alpha - l * prm.gamma - sigma_off);
                }
            }
        }
    }

    RemainderControls out;
    out.first_index = first_index;
    out.last_index = last_index;
    const double r_pow = prm.p / gp;
    for (int i = 0; i < n; ++i)
        out.consecutive.push_back(control_table_from_matrix(consec[i], 1.0 / gp, r_pow, grid));
    for (auto& [key, mat] : g1)
        out.kind1.emplace(key, control_table_from_matrix(
                                   mat, 1.0 / ((key.second - key.first - 1) * gp), r_pow, grid));
    for (auto& [key, mat] : g2)
        out.kind2.emplace(
            key, control_table_from_matrix(mat, 1.0 / ((key.second - key.first) * gp), r_pow, grid));

    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int t = first_index; t <= last_index; ++t)
            s = std::max(s, block_alpha_norm(scale, xi.at(i, t), xi.level_alpha(i)));
        out.sup_norms.push_back(s);
    }
    return out;
}

ControlledNorm controlled_norm(const ControlledPath& xi, const RemainderControls& rc) {
    const auto& prm = xi.params();
    const double gp = prm.gamma - prm.p;
    ControlledNorm norm;
    for (int i = 0; i < prm.levels; ++i) {
        norm.items.push_back({"sup", i, -1, rc.sup_norms[i]});
        norm.items.push_back({"consec", i, i + 1, std::pow(rc.consecutive[i].total(), gp)});
    }
    for (const auto& [key, table] : rc.kind1)
        norm.items.push_back(
            {"rem1", key.first, key.second, std::pow(table.total(), (key.second - key.first - 1) * gp)});
    for (const auto& [key, table] : rc.kind2)
        norm.items.push_back(
            {"rem2", key.first, key.second, std::pow(table.total(), (key.second - key.first) * gp)});
    for (const auto& item : norm.items) norm.total += item.value;
    return norm;
}

ControlledNorm controlled_norm(const ControlledPath& xi, int first_index, int last_index) {
    return controlled_norm(xi, remainder_controls(xi, first_index, last_index));
}

GOperator::GOperator(std::shared_ptr<const SpectralScale> scale, int dim, double sigma,
                     double amplitude, bool time_constant)
    : scale_(std::move(scale)),
      dim_(dim),
      sigma_(sigma),
      amplitude_(amplitude),
      time_constant_(time_constant) {
    if (dim_ < 1) throw DimensionError("GOperator: dimension must be positive");
    if (sigma_ < 0.0) throw ParameterError("GOperator: spatial order must be nonnegative");
}

double GOperator::coefficient(int direction, double t) const {
    if (time_constant_) return amplitude_;
    return amplitude_ * (1.0 + 0.25 * std::cos(2.0 * M_PI * t + (direction + 1)));
}

SpectralElement GOperator::apply(const SpectralElement& z, int direction, double t) const {
    SpectralElement out = scale_->fractional_power(z, sigma_);
    out *= coefficient(direction, t);
    return out;
}

TensorBlock GOperator::apply_to_block(const TensorBlock& block, double t) const {
    TensorBlock out(block.size() * dim_);
    for (std::size_t a = 0; a < block.size(); ++a) {
        SpectralElement powered = scale_->fractional_power(block[a], sigma_);
        for (int e = 0; e < dim_; ++e) {
            SpectralElement v = powered;
            v *= coefficient(e, t);
            out[a * dim_ + e] = std::move(v);
        }
    }
    return out;
}

TensorBlock GOperator::iterate(const SpectralElement& z, int k, double t) const {
    if (k < 1) throw ParameterError("GOperator::iterate: order must be >= 1");
    if (k == 1) {
        TensorBlock out(dim_);
        for (int e = 0; e < dim_; ++e) out[e] = apply(z, e, t);
        return out;
    }
    const int rest = ipow(dim_, k - 1);
    TensorBlock out(dim_ * rest);
    for (int v1 = 0; v1 < dim_; ++v1) {
        TensorBlock inner = iterate(apply(z, v1, t), k - 1, t);
        for (int b = 0; b < rest; ++b) out[v1 * rest + b] = std::move(inner[b]);
    }
    return out;
}

ControlledPath compose_linear_G(const GOperator& G, const ControlledPath& xi_tilde) {
    if (xi_tilde.variant() != ControlledVariant::Tilde)
        throw ParameterError("compose_linear_G: input must be a Tilde-variant path");
    if (G.dim() != xi_tilde.dim())
        throw DimensionError("compose_linear_G: dimension mismatch");
    if (std::abs(G.sigma() - xi_tilde.params().sigma) > 1e-14)
        throw ParameterError("compose_linear_G: diffusion order does not match the path's scale offset");
    ControlledPath out(ControlledVariant::Base, xi_tilde.params(), xi_tilde.driver_ptr(),
                       xi_tilde.scale_ptr(), xi_tilde.first_index(), xi_tilde.last_index());
    for (int j = 0; j < xi_tilde.levels(); ++j)
        for (int t = xi_tilde.first_index(); t <= xi_tilde.last_index(); ++t)
            out.set(j, t, G.apply_to_block(xi_tilde.at(j, t), xi_tilde.driver().time(t)));
    return out;
}

}  // namespace roughpath
