#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/controls.hpp"
#include "core/spectral.hpp"
#include "core/tensor.hpp"

namespace roughpath {

/// Base: levels take values in E_{alpha - j gamma - sigma} with tensor rank
/// j+1 (the integrand space). Tilde: values in E_{alpha - j gamma} with rank
/// j (the solution space; level 0 is the path component).
enum class ControlledVariant { Base, Tilde };

struct ControlledParams {
    double alpha = 0.0;
    double sigma = 0.0;
    double gamma = 0.0;
    double p = 0.0;
    int levels = 0;  // N
    int dim = 0;     // d
};

/// Tensor-indexed collection of spectral elements: block[I] for multi-index I
/// flattened row-major (first slot most significant).
using TensorBlock = std::vector<SpectralElement>;

/// Contract the leading `contract_rank` slots of a block against a flat
/// tensor (size dim^contract_rank); result has rank reduced accordingly.
TensorBlock contract_leading(const TensorBlock& block, const std::vector<double>& tensor,
                             int dim, int contract_rank);

/// A family of Gubinelli levels on a grid range, driven by a rough path.
class ControlledPath {
public:
    ControlledPath() = default;
    ControlledPath(ControlledVariant variant, ControlledParams params,
                   std::shared_ptr<const RoughPathGrid> driver,
                   std::shared_ptr<const SpectralScale> scale, int first_index, int last_index);

    static ControlledPath zero(ControlledVariant variant, ControlledParams params,
                               std::shared_ptr<const RoughPathGrid> driver,
                               std::shared_ptr<const SpectralScale> scale, int first_index,
                               int last_index);

    ControlledVariant variant() const { return variant_; }
    const ControlledParams& params() const { return params_; }
    const RoughPathGrid& driver() const { return *driver_; }
    std::shared_ptr<const RoughPathGrid> driver_ptr() const { return driver_; }
    const SpectralScale& scale() const { return *scale_; }
    std::shared_ptr<const SpectralScale> scale_ptr() const { return scale_; }

    int first_index() const { return first_; }
    int last_index() const { return last_; }
    int time_points() const { return last_ - first_ + 1; }
    int levels() const { return params_.levels; }
    int dim() const { return params_.dim; }

    /// Tensor rank of level j under the variant convention.
    int rank(int j) const;
    int block_size(int j) const;
    /// Scale index in which level j is measured.
    double level_alpha(int j) const;

    const TensorBlock& at(int j, int time_index) const;
    TensorBlock& at(int j, int time_index);
    void set(int j, int time_index, TensorBlock value);

    /// Defect of the controlled expansion over [t_s, t_t]:
    ///   R^{i,l} = delta xi^i - sum_{i<j<l} xi^j_s o Pi^{j-i}(X)_{s,t};
    /// for l = i+1 this is delta xi^i.
    TensorBlock remainder(int i, int l, int s_index, int t_index) const;

    ControlledPath operator+(const ControlledPath& o) const;
    ControlledPath operator-(const ControlledPath& o) const;
    ControlledPath scaled(double c) const;

    /// Tilde tail of a Base path: level i of the result is level i-1 of the
    /// input for 1 <= i < N; level 0 is zero (filled by integration).
    ControlledPath shift_to_tilde() const;

private:
    ControlledVariant variant_ = ControlledVariant::Base;
    ControlledParams params_;
    std::shared_ptr<const RoughPathGrid> driver_;
    std::shared_ptr<const SpectralScale> scale_;
    int first_ = 0;
    int last_ = 0;
    // levels_[j][local_time][tensor_index]
    std::vector<std::vector<TensorBlock>> levels_;
};

/// max over tensor indices of the E_alpha norms of the components.
double block_alpha_norm(const SpectralScale& scale, const TensorBlock& block, double alpha);

/// Remainder control tables of a controlled path over a grid range. Raw W
/// values; callers apply the norm powers.
struct RemainderControls {
    int first_index = 0;
    int last_index = 0;
    std::vector<ControlTable> consecutive;            // index i: germ |delta xi^i|
    std::map<std::pair<int, int>, ControlTable> kind1;  // (i,l), l-i > 1
    std::map<std::pair<int, int>, ControlTable> kind2;
    std::vector<double> sup_norms;                    // index i

    /// kind-2 table with the l = i+1 convention (consecutive table stands in).
    const ControlTable& kind2_with_convention(int i, int l) const;
};

RemainderControls remainder_controls(const ControlledPath& xi, int first_index, int last_index);

struct NormItem {
    std::string kind;  // "sup", "consec", "rem1", "rem2"
    int i = 0;
    int l = 0;
    double value = 0.0;
};

/// The controlled-path norm over a grid range, itemized: consecutive
/// controls at power gamma-p, pair controls at powers (l-i-1)(gamma-p) and
/// (l-i)(gamma-p), plus level sup-norms.
struct ControlledNorm {
    std::vector<NormItem> items;
    double total = 0.0;
};

ControlledNorm controlled_norm(const ControlledPath& xi, int first_index, int last_index);
ControlledNorm controlled_norm(const ControlledPath& xi, const RemainderControls& controls);

/// The unbounded linear diffusion: direction e_i acts as
///   G_t(z)(e_i) = c_i(t) * Lambda^sigma z,
/// where Lambda^sigma is the diagonal fractional power (unit operator norm
/// E_beta -> E_{beta-sigma} on every rung) and c_i(t) = amp*(1 + cos(2 pi t + i)/4).
class GOperator {
public:
    GOperator(std::shared_ptr<const SpectralScale> scale, int dim, double sigma,
              double amplitude = 1.0, bool time_constant = false);

    int dim() const { return dim_; }
    double sigma() const { return sigma_; }
    double coefficient(int direction, double t) const;
    /// Uniform operator bound over directions and time.
    double operator_bound() const { return amplitude_ * 1.25; }
    /// Time Hoelder constant of t -> G_t(z) (Lipschitz here).
    double time_holder_bound() const { return time_constant_ ? 0.0 : amplitude_ * M_PI / 2.0; }

    SpectralElement apply(const SpectralElement& z, int direction, double t) const;
    /// Appends one tensor slot (last position): block index I*d + e.
    TensorBlock apply_to_block(const TensorBlock& block, double t) const;

    /// k-fold composition G^{ok}: result[v1*d^{k-1} + rest] applies direction
    /// v1 innermost.
    TensorBlock iterate(const SpectralElement& z, int k, double t) const;

private:
    std::shared_ptr<const SpectralScale> scale_;
    int dim_;
    double sigma_;
    double amplitude_;
    bool time_constant_;
};

/// Composition of the diffusion with a Tilde path: level j of the result is
/// G_t^{o1}(xi~^j_t), a Base path with one extra tensor slot per level.
ControlledPath compose_linear_G(const GOperator& G, const ControlledPath& xi_tilde);

}  // namespace roughpath
