#pragma once

#include <functional>
#include <vector>

#include "core/controlled.hpp"
#include "core/controls.hpp"
#include "core/spectral.hpp"

namespace roughpath {

/// Exponent bookkeeping for the rough integral. Requires
///   (sigma + N gamma)/(N+1) < p < gamma,  1/gamma not an integer,
/// which makes every P_i = (i+1)p - i gamma - sigma positive.
struct SewingParams {
    ControlledParams base;      // alpha, sigma, gamma, p, levels, dim
    std::vector<double> P;      // P_i for i = 0..N

    double gamma() const { return base.gamma; }
    double p() const { return base.p; }
    double sigma() const { return base.sigma; }
    double alpha() const { return base.alpha; }
    int levels() const { return base.levels; }
};

SewingParams validate_params(double gamma, double p, double sigma, int levels, double alpha,
                             int dim);

/// Dyadic Riemann-sum history of one rough integral. Stage m uses grid-
/// snapped dyadic points; the last stage resolves every grid cell, where the
/// sum is exact for the stored increments.
struct DyadicRecord {
    int first_index = 0;
    int last_index = 0;
    SpectralElement initial;                           // Gamma^0
    SpectralElement value;                             // final stage
    std::vector<std::vector<double>> increment_norms;  // [m-1][l]: |G^m - G^{m-1}|_{alpha - l gamma}
    bool converged = false;
    int stages = 0;
};

/// Rough integral of a Base-variant controlled path against its driver,
/// weighted by the evolution family:  int_s^t U_{t,v} xi_v o dX_v.
DyadicRecord sewing_integral(const ControlledPath& xi, const EvolutionFamily& U, int first_index,
                             int last_index, const SewingParams& params, int m_max = 14,
                             double tol = 1e-9);

struct CertificateReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs, 0 when both vanish
};

/// Ratio of |integral - Gamma^0|_{alpha - l gamma} to the sewing error bound
/// built from the remainder and driver controls. The implicit constant is
/// reported, never asserted.
CertificateReport error_certificate(const SpectralScale& scale, const DyadicRecord& record,
                                    const RemainderControls& xi_controls,
                                    const RoughPathControls& x_controls, const SewingParams& params,
                                    int l);

/// Cumulative rough integral promoted to a Tilde-variant controlled path:
/// level 0 is a -> int_s^a U_{a,v} xi_v o dX_v, level j is xi^{j-1}.
ControlledPath integral_as_controlled(const ControlledPath& xi, const EvolutionFamily& U,
                                      int first_index, int last_index, const SewingParams& params);

/// Two-parameter germ producing flat tensor values of fixed size.
using VectorGerm = std::function<std::vector<double>(int, int)>;

struct YoungRecord {
    std::vector<double> value;
    std::vector<double> increments;  // max-norm of stage differences
    bool converged = false;
};

/// Generic sewing of an abstract germ over a grid interval: dyadic limit of
/// Riemann sums, resolved down to single grid cells. The caller guarantees a
/// superadditively small defect; stage increments are reported for checking.
YoungRecord young_sewing(const VectorGerm& germ, int value_size,
                         const std::vector<double>& grid_times, int first_index, int last_index,
                         double tol = 1e-12, int m_max = 30);

/// Drift term of the mild solution: Z_tau = int_s^tau U_{tau,u} F(u, y_u) du
/// as a Tilde path with zero Gubinelli levels. Per cell, the diagonal
/// exponential is integrated exactly against linear interpolation of the
/// integrand (order 2, stiffness-free).
ControlledPath drift_convolution(
    const std::function<SpectralElement(double, const SpectralElement&)>& drift,
    const ControlledPath& y_tilde, const EvolutionFamily& U, int first_index, int last_index);

}  // namespace roughpath
