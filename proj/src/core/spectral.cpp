#include "core/spectral.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace roughpath {

SpectralElement& SpectralElement::operator+=(const SpectralElement& o) {
    if (coef.size() != o.coef.size()) throw DimensionError("SpectralElement: mode mismatch");
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] += o.coef[k];
    return *this;
}

SpectralElement& SpectralElement::operator-=(const SpectralElement& o) {
    if (coef.size() != o.coef.size()) throw DimensionError("SpectralElement: mode mismatch");
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] -= o.coef[k];
    return *this;
}

SpectralElement& SpectralElement::operator*=(double c) {
    for (double& v : coef) v *= c;
    return *this;
}

SpectralElement SpectralElement::operator+(const SpectralElement& o) const {
    SpectralElement r = *this;
    r += o;
    return r;
}

SpectralElement SpectralElement::operator-(const SpectralElement& o) const {
    SpectralElement r = *this;
    r -= o;
    return r;
}

SpectralScale::SpectralScale(int modes) {
    if (modes < 1) throw DimensionError("SpectralScale: need at least one mode");
    lambda_.resize(modes);
    for (int k = 0; k < modes; ++k) lambda_[k] = static_cast<double>(k + 1) * (k + 1);
}

SpectralScale::SpectralScale(std::vector<double> eigenvalues) : lambda_(std::move(eigenvalues)) {
    if (lambda_.empty()) throw DimensionError("SpectralScale: empty eigenvalue list");
    double prev = 0.0;
    for (double l : lambda_) {
        if (!(l > prev)) throw ParameterError("SpectralScale: eigenvalues must be strictly positive increasing");
        prev = l;
    }
}

double SpectralScale::alpha_norm(const SpectralElement& x, double alpha) const {
    double s = 0.0;
    for (int k = 0; k < x.modes(); ++k) {
        const double w = std::pow(lambda_[k], alpha);
        s += w * w * x.coef[k] * x.coef[k];
    }
    return std::sqrt(s);
}

SpectralElement SpectralScale::fractional_power(const SpectralElement& x, double beta) const {
    SpectralElement y = x;
    if (beta == 0.0) return y;
    for (int k = 0; k < y.modes(); ++k) y.coef[k] *= std::pow(lambda_[k], beta);
    return y;
}

SpectralElement SpectralScale::basis(int k, double value) const {
    SpectralElement x(modes());
    x.coef[k] = value;
    return x;
}

TimeCoefficient TimeCoefficient::constant_one() {
    TimeCoefficient c;
    c.a = [](double) { return 1.0; };
    c.primitive = [](double t) { return t; };
    c.holder_exponent = 1.0;
    return c;
}

TimeCoefficient TimeCoefficient::sinusoidal(double amplitude) {
    if (!(amplitude < 1.0) || amplitude < 0.0)
        throw ParameterError("TimeCoefficient: amplitude must lie in [0,1) to keep a(t) positive");
    TimeCoefficient c;
    const double twopi = 2.0 * M_PI;
    c.a = [amplitude, twopi](double t) { return 1.0 + amplitude * std::sin(twopi * t); };
    c.primitive = [amplitude, twopi](double t) {
        return t + amplitude * (1.0 - std::cos(twopi * t)) / twopi;
    };
    c.holder_exponent = 1.0;
    return c;
}

EvolutionFamily::EvolutionFamily(std::shared_ptr<const SpectralScale> scale, TimeCoefficient coeff)
    : scale_(std::move(scale)), coeff_(std::move(coeff)) {}

EvolutionFamily EvolutionFamily::identity(std::shared_ptr<const SpectralScale> scale) {
    EvolutionFamily U(std::move(scale), TimeCoefficient::constant_one());
    U.identity_ = true;
    return U;
}

EvolutionFamily EvolutionFamily::heat(std::shared_ptr<const SpectralScale> scale) {
    return EvolutionFamily(std::move(scale), TimeCoefficient::constant_one());
}

SpectralElement EvolutionFamily::apply(double t, double s, const SpectralElement& x) const {
    if (t < s) throw IntervalError("apply_U: need s <= t");
    if (identity_) return x;
    const double dA = coeff_.primitive(t) - coeff_.primitive(s);
    SpectralElement y = x;
    for (int k = 0; k < y.modes(); ++k) y.coef[k] *= std::exp(-scale_->eigenvalue(k) * dA);
    return y;
}

void EvolutionFamily::propagator(double t, double s, std::vector<double>& factors) const {
    if (t < s) throw IntervalError("apply_U: need s <= t");
    factors.resize(scale_->modes());
    if (identity_) {
        std::fill(factors.begin(), factors.end(), 1.0);
        return;
    }
    const double dA = coeff_.primitive(t) - coeff_.primitive(s);
    for (int k = 0; k < scale_->modes(); ++k)
        factors[k] = std::exp(-scale_->eigenvalue(k) * dA);
}

SmoothingReport smoothing_check(const EvolutionFamily& U, double alpha, double sigma1,
                                double sigma2, const std::vector<SpectralElement>& sample,
                                const std::vector<double>& gaps, double t_anchor) {
    const SpectralScale& scale = U.scale();
    SmoothingReport rep{0.0, 0.0};
    for (const auto& x : sample) {
        for (double g : gaps) {
            if (!(g > 0.0)) continue;
            const double t = t_anchor + g;
            SpectralElement ux = U.apply(t, t_anchor, x);
            SpectralElement diff = ux - x;
            const double denom1 = scale.alpha_norm(x, alpha + sigma1);
            if (denom1 > 0.0) {
                const double r1 = scale.alpha_norm(diff, alpha) / (std::pow(g, sigma1) * denom1);
                rep.increment_constant = std::max(rep.increment_constant, r1);
            }
            const double denom2 = scale.alpha_norm(x, alpha);
            if (denom2 > 0.0) {
                const double r2 = std::pow(g, sigma2) * scale.alpha_norm(ux, alpha + sigma2) / denom2;
                rep.smoothing_constant = std::max(rep.smoothing_constant, r2);
            }
        }
    }
    return rep;
}

}  // namespace roughpath
