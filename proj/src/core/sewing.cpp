#include "core/sewing.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace roughpath {

namespace {

// phi1(z) = (1 - e^-z)/z = sum_k (-z)^k/(k+1)!, phi2(z) = (z - 1 + e^-z)/z^2
// = sum_k (-z)^k/(k+2)!; series branch for small z avoids cancellation.
double phi1(double z) {
    if (std::abs(z) < 0.1) {
        double s = 0.0, t = 1.0;  // t = (-z)^k / k!
        for (int k = 0; k <= 12; ++k) {
            s += t / (k + 1);
            t *= -z / (k + 1);
        }
        return s;
    }
    return (1.0 - std::exp(-z)) / z;
}

double phi2(double z) {
    if (std::abs(z) < 0.1) {
        double s = 0.0, t = 1.0;  // t = (-z)^k / k!
        for (int k = 0; k <= 12; ++k) {
            s += t / ((k + 1) * (k + 2));
            t *= -z / (k + 1);
        }
        return s;
    }
    return (z - 1.0 + std::exp(-z)) / (z * z);
}

int snap_index(int first, int cells, int n, int m) {
    // dyadic point tau^n_m snapped to the grid, monotone in n
    const double pos = static_cast<double>(n) * cells / std::pow(2.0, m);
    return first + static_cast<int>(std::llround(pos));
}

int stage_cap(int cells) {
    int m = 0;
    while ((1 << m) < cells) ++m;
    return m;
}

}  // namespace

SewingParams validate_params(double gamma, double p, double sigma, int levels, double alpha,
                             int dim) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw ParameterError("validate_params: gamma must lie in (0,1)");
    const double inv = 1.0 / gamma;
    if (std::abs(inv - std::llround(inv)) < 1e-9)
        throw ParameterError("validate_params: 1/gamma must not be an integer");
    if (levels != static_cast<int>(std::floor(inv)))
        throw ParameterError("validate_params: level count must equal floor(1/gamma)");
    if (sigma < 0.0 || !(sigma < gamma))
        throw ParameterError("validate_params: need 0 <= sigma < gamma");
    const double lower = (sigma + levels * gamma) / (levels + 1);
    if (!(p > lower))
        throw ParameterError("validate_params: failed (sigma + N gamma)/(N+1) < p, lower bound " +
                             std::to_string(lower));
    if (!(p < gamma)) throw ParameterError("validate_params: failed p < gamma");

    SewingParams out;
    out.base = ControlledParams{alpha, sigma, gamma, p, levels, dim};
    for (int i = 0; i <= levels; ++i) out.P.push_back((i + 1) * p - i * gamma - sigma);
    return out;
}

namespace {

// Gamma^m: grid-snapped dyadic Riemann sum of U_{t_end, tau} xi_tau o Pi^{j+1}(X).
SpectralElement dyadic_stage(const ControlledPath& xi, const EvolutionFamily& U, int first,
                             int last, int m) {
    const RoughPathGrid& X = xi.driver();
    const int cells = last - first;
    const double t_end = X.time(last);
    SpectralElement acc(xi.scale().modes());
    const int pieces = 1 << m;
    int prev = snap_index(first, cells, 0, m);
    for (int n = 0; n < pieces; ++n) {
        const int next = snap_index(first, cells, n + 1, m);
        if (next == prev) continue;
        const TensorElement inc = X.query(prev, next);
        SpectralElement contrib(xi.scale().modes());
        for (int j = 0; j < xi.levels(); ++j) {
            TensorBlock c = contract_leading(xi.at(j, prev), inc.block(j + 1), xi.dim(), j + 1);
            contrib += c[0];
        }
        acc += U.apply(t_end, X.time(prev), contrib);
        prev = next;
    }
    return acc;
}

}  // namespace

DyadicRecord sewing_integral(const ControlledPath& xi, const EvolutionFamily& U, int first_index,
                             int last_index, const SewingParams& params, int m_max, double tol) {
    if (xi.variant() != ControlledVariant::Base)
        throw ParameterError("sewing_integral: integrand must be a Base-variant path");
    if (first_index < xi.first_index() || last_index > xi.last_index() || first_index >= last_index)
        throw IntervalError("sewing_integral: invalid interval");

    DyadicRecord rec;
    rec.first_index = first_index;
    rec.last_index = last_index;

    const int cap = stage_cap(last_index - first_index);
    const int effective = std::min(m_max, cap);
    const SpectralScale& scale = xi.scale();
    const double alpha = params.alpha();
    const double gamma = params.gamma();

    SpectralElement prev = dyadic_stage(xi, U, first_index, last_index, 0);
    rec.initial = prev;
    rec.value = prev;
    rec.stages = 0;
    for (int m = 1; m <= effective; ++m) {
        SpectralElement cur = dyadic_stage(xi, U, first_index, last_index, m);
        std::vector<double> norms;
        SpectralElement diff = cur - prev;
        for (int l = 0; l <= params.levels(); ++l)
            norms.push_back(scale.alpha_norm(diff, alpha - l * gamma));
        rec.increment_norms.push_back(norms);
        rec.value = cur;
        rec.stages = m;
        prev = cur;
        if (norms[0] < tol) break;
    }
    const bool grid_resolved = rec.stages == cap;
    const bool tol_met =
        rec.increment_norms.empty() || rec.increment_norms.back()[0] < tol;
    rec.converged = grid_resolved || tol_met;
    if (!rec.converged) {
        std::vector<double> hist;
        for (const auto& n : rec.increment_norms) hist.push_back(n[0]);
        throw ConvergenceError("sewing_integral: dyadic sums not resolved within stage cap " +
                                   std::to_string(m_max),
                               hist);
    }
    return rec;
}

CertificateReport error_certificate(const SpectralScale& scale, const DyadicRecord& record,
                                    const RemainderControls& xi_controls,
                                    const RoughPathControls& x_controls, const SewingParams& params,
                                    int l) {
    const int n = params.levels();
    const double gp = params.gamma() - params.p();
    CertificateReport rep;

    const SpectralElement diff = record.value - record.initial;
    rep.lhs = scale.alpha_norm(diff, params.alpha() - l * params.gamma());

    const int ia = record.first_index;
    const int ib = record.last_index;
    const double dt = x_controls.total.time(ib) - x_controls.total.time(ia);
    double rhs = 0.0;
    for (int j = 0; j < n; ++j) {
        const double wx = std::pow(x_controls.per_level[j].value(ia, ib), (j + 1) * gp);
        const double w2 =
            std::pow(xi_controls.kind2_with_convention(j, n).value(ia - xi_controls.first_index,
                                                                   ib - xi_controls.first_index),
                     (n - j) * gp);
        rhs += wx * (std::pow(dt, params.P[n] + l * gp) * w2 +
                     std::pow(dt, params.P[j] + l * gp) * xi_controls.sup_norms[j]);
    }
    rhs *= std::pow(dt, l * params.p());
    rep.rhs = rhs;
    rep.ratio = rhs > 0.0 ? rep.lhs / rhs : 0.0;
    return rep;
}

ControlledPath integral_as_controlled(const ControlledPath& xi, const EvolutionFamily& U,
                                      int first_index, int last_index, const SewingParams& params) {
    if (xi.variant() != ControlledVariant::Base)
        throw ParameterError("integral_as_controlled: integrand must be a Base-variant path");
    ControlledPath out(ControlledVariant::Tilde, xi.params(), xi.driver_ptr(), xi.scale_ptr(),
                       first_index, last_index);
    // shifted Gubinelli tail
    for (int i = 1; i < xi.levels(); ++i)
        for (int t = first_index; t <= last_index; ++t) out.set(i, t, xi.at(i - 1, t));

    // cumulative level-0 build: I(k+1) = U_{k+1,k} (I(k) + Gamma^0 over cell k)
    const RoughPathGrid& X = xi.driver();
    const SpectralScale& scale = xi.scale();
    SpectralElement acc(scale.modes());
    std::vector<double> factors;
    for (int k = first_index; k < last_index; ++k) {
        SpectralElement cell_term(scale.modes());
        const TensorElement& inc = X.cell(k);
        for (int j = 0; j < xi.levels(); ++j) {
            TensorBlock c = contract_leading(xi.at(j, k), inc.block(j + 1), xi.dim(), j + 1);
            cell_term += c[0];
        }
        acc += cell_term;
        U.propagator(X.time(k + 1), X.time(k), factors);
        for (int q = 0; q < scale.modes(); ++q) acc.coef[q] *= factors[q];
        out.set(0, k + 1, TensorBlock{acc});
    }
    return out;
}

YoungRecord young_sewing(const VectorGerm& germ, int value_size,
                         const std::vector<double>& grid_times, int first_index, int last_index,
                         double tol, int m_max) {
    if (first_index >= last_index) throw IntervalError("young_sewing: invalid interval");
    const int cells = last_index - first_index;
    const int cap = stage_cap(cells);
    const int effective = std::min(m_max, cap);

    auto stage_sum = [&](int m) {
        std::vector<double> acc(value_size, 0.0);
        const int pieces = 1 << m;
        int prev = snap_index(first_index, cells, 0, m);
        for (int n = 0; n < pieces; ++n) {
            const int next = snap_index(first_index, cells, n + 1, m);
            if (next == prev) continue;
            std::vector<double> v = germ(prev, next);
            for (int q = 0; q < value_size; ++q) acc[q] += v[q];
            prev = next;
        }
        return acc;
    };

    YoungRecord rec;
    std::vector<double> prev = stage_sum(0);
    rec.value = prev;
    for (int m = 1; m <= effective; ++m) {
        std::vector<double> cur = stage_sum(m);
        double inc = 0.0;
        for (int q = 0; q < value_size; ++q) inc = std::max(inc, std::abs(cur[q] - prev[q]));
        rec.increments.push_back(inc);
        rec.value = cur;
        prev = std::move(cur);
    }
    rec.converged = effective == cap || (!rec.increments.empty() && rec.increments.back() < tol);
    if (!rec.converged)
        throw ConvergenceError("young_sewing: Riemann sums not resolved; defect scaling history attached",
                               rec.increments);
    return rec;
}

ControlledPath drift_convolution(
    const std::function<SpectralElement(double, const SpectralElement&)>& drift,
    const ControlledPath& y_tilde, const EvolutionFamily& U, int first_index, int last_index) {
    if (y_tilde.variant() != ControlledVariant::Tilde)
        throw ParameterError("drift_convolution: state path must be Tilde-variant");
    ControlledPath out(ControlledVariant::Tilde, y_tilde.params(), y_tilde.driver_ptr(),
                       y_tilde.scale_ptr(), first_index, last_index);

    const SpectralScale& scale = y_tilde.scale();
    const RoughPathGrid& X = y_tilde.driver();
    const int modes = scale.modes();

    SpectralElement acc(modes);
    SpectralElement f_right = drift(X.time(first_index), y_tilde.at(0, first_index)[0]);
    for (int k = first_index; k < last_index; ++k) {
        const double t0 = X.time(k);
        const double t1 = X.time(k + 1);
        SpectralElement f0 = f_right;
        f_right = drift(t1, y_tilde.at(0, k + 1)[0]);
        if (!std::isfinite(f0.coef[0]) || !std::isfinite(f_right.coef[0]))
            throw NumericalError("drift_convolution: non-finite drift value in cell " +
                                 std::to_string(k));

        // change of variables v = A(u): g(v) = f(u)/a(u) is interpolated
        // linearly between the cell endpoints, the exponential handled exactly
        const double hA = U.is_identity() ? (t1 - t0) : (U.primitive(t1) - U.primitive(t0));
        const double inv_a0 = 1.0 / U.coefficient_at(t0);
        const double inv_a1 = 1.0 / U.coefficient_at(t1);
        for (int q = 0; q < modes; ++q) {
            const double lam = U.is_identity() ? 0.0 : scale.eigenvalue(q);
            const double z = lam * hA;
            const double g0 = f0.coef[q] * inv_a0;
            const double g1 = f_right.coef[q] * inv_a1;
            const double cell = hA * (g0 * phi1(z) + (g1 - g0) * phi2(z));
            acc.coef[q] = std::exp(-z) * acc.coef[q] + cell;
        }
        out.set(0, k + 1, TensorBlock{acc});
    }
    return out;
}

}  // namespace roughpath
