#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace roughpath {

/// Coefficients on a truncated eigenbasis. The associated eigenvalues live in
/// a SpectralScale shared by all elements of a computation.
struct SpectralElement {
    std::vector<double> coef;

    SpectralElement() = default;
    explicit SpectralElement(int modes) : coef(modes, 0.0) {}

    int modes() const { return static_cast<int>(coef.size()); }

    SpectralElement& operator+=(const SpectralElement& o);
    SpectralElement& operator-=(const SpectralElement& o);
    SpectralElement& operator*=(double c);
    SpectralElement operator+(const SpectralElement& o) const;
    SpectralElement operator-(const SpectralElement& o) const;
};

/// The monotone scale of spaces indexed by alpha: |x|_alpha is the l2 norm
/// weighted by lambda_k^alpha. Eigenvalues are strictly positive increasing
/// (lambda_k = k^2 by default).
class SpectralScale {
public:
    explicit SpectralScale(int modes);
    SpectralScale(std::vector<double> eigenvalues);

    int modes() const { return static_cast<int>(lambda_.size()); }
    double eigenvalue(int k) const { return lambda_[k]; }
    const std::vector<double>& eigenvalues() const { return lambda_; }

    double alpha_norm(const SpectralElement& x, double alpha) const;
    /// Coefficient-wise multiplication by lambda_k^beta; shifts the scale index:
    /// |fractional_power(x, beta)|_alpha = |x|_{alpha+beta}.
    SpectralElement fractional_power(const SpectralElement& x, double beta) const;

    SpectralElement basis(int k, double value = 1.0) const;

private:
    std::vector<double> lambda_;
};

/// Time coefficient of the non-autonomous generator, with an exact primitive.
struct TimeCoefficient {
    std::function<double(double)> a;          // a(t) >= a_min > 0
    std::function<double(double)> primitive;  // A(t) = int_0^t a
    double holder_exponent = 1.0;

    static TimeCoefficient constant_one();
    /// a(t) = 1 + amplitude * sin(2 pi t); default amplitude 1/2.
    static TimeCoefficient sinusoidal(double amplitude = 0.5);
};

/// Two-parameter evolution family acting diagonally on the spectral basis:
/// U_{t,s} x_k = exp(-lambda_k (A(t)-A(s))) x_k. The cocycle identity holds
/// exactly by exponent additivity.
class EvolutionFamily {
public:
    EvolutionFamily(std::shared_ptr<const SpectralScale> scale, TimeCoefficient coeff);

    /// Family with U_{t,s} = Id (zero-eigenvalue limit, Young-regime testing).
    static EvolutionFamily identity(std::shared_ptr<const SpectralScale> scale);
    /// Autonomous heat family: a == 1.
    static EvolutionFamily heat(std::shared_ptr<const SpectralScale> scale);

    const SpectralScale& scale() const { return *scale_; }
    std::shared_ptr<const SpectralScale> scale_ptr() const { return scale_; }
    bool is_identity() const { return identity_; }

    double primitive(double t) const { return identity_ ? 0.0 : coeff_.primitive(t); }
    double coefficient_at(double t) const { return identity_ ? 1.0 : coeff_.a(t); }
    double coefficient_holder() const { return coeff_.holder_exponent; }

    /// U_{t,s} x for s <= t.
    SpectralElement apply(double t, double s, const SpectralElement& x) const;
    /// Coefficient-wise propagator factors exp(-lambda_k dA) for dA = A(t)-A(s).
    void propagator(double t, double s, std::vector<double>& factors) const;

private:
    std::shared_ptr<const SpectralScale> scale_;
    TimeCoefficient coeff_;
    bool identity_ = false;
};

struct SmoothingReport {
    double increment_constant;  // sup |(U_{t,s}-I)x|_alpha / (|t-s|^s1 |x|_{alpha+s1})
    double smoothing_constant;  // sup |t-s|^s2 |U_{t,s}x|_{alpha+s2} / |x|_alpha
};

/// Empirical constants of the parabolic smoothing estimates over a sample of
/// elements and a ladder of time gaps.
SmoothingReport smoothing_check(const EvolutionFamily& U, double alpha, double sigma1,
                                double sigma2, const std::vector<SpectralElement>& sample,
                                const std::vector<double>& gaps, double t_anchor = 0.0);

}  // namespace roughpath
