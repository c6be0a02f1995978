#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "core/errors.hpp"

namespace roughpath {

DriftFunction DriftFunction::zero(int modes) {
    DriftFunction f;
    f.eval = [modes](double, const SpectralElement&) { return SpectralElement(modes); };
    f.lipschitz = 0.0;
    f.delta = 0.0;
    return f;
}

DriftFunction DriftFunction::diagonal(std::shared_ptr<const SpectralScale> scale,
                                      double coefficient, double delta) {
    DriftFunction f;
    f.eval = [scale, coefficient, delta](double, const SpectralElement& y) {
        SpectralElement v = scale->fractional_power(y, delta);
        v *= coefficient;
        return v;
    };
    f.lipschitz = std::abs(coefficient);
    f.delta = delta;
    return f;
}

DriftFunction DriftFunction::constant(SpectralElement value) {
    DriftFunction f;
    f.eval = [value](double, const SpectralElement&) { return value; };
    f.lipschitz = 0.0;
    f.delta = 0.0;
    return f;
}

void SolveConfig::validate() const {
    if (!(picard_tol > 0.0)) throw ParameterError("SolveConfig: Picard tolerance must be positive");
    if (picard_max_iter < 2) throw ParameterError("SolveConfig: need at least two Picard iterations");
    if (!(chi > 0.0) || !(chi <= step_cap) || !(step_cap < 1.0))
        throw ParameterError("SolveConfig: need 0 < chi <= L2 < 1");
    if (!(L >= 1.0)) throw ParameterError("SolveConfig: one-step constant must satisfy L >= 1");
}

ControlledPath free_term(const PicardProblem& prob, const ControlledParams& params,
                         const SpectralElement& y, int first_index, int last_index) {
    ControlledPath out(ControlledVariant::Tilde, params, prob.driver, prob.scale, first_index,
                       last_index);
    SpectralElement cur = y;
    out.set(0, first_index, TensorBlock{cur});
    std::vector<double> factors;
    for (int k = first_index; k < last_index; ++k) {
        prob.U->propagator(prob.driver->time(k + 1), prob.driver->time(k), factors);
        for (int q = 0; q < cur.modes(); ++q) cur.coef[q] *= factors[q];
        out.set(0, k + 1, TensorBlock{cur});
    }
    return out;
}

ControlledPath picard_step(const PicardProblem& prob, const SolveConfig& config,
                           const ControlledPath& current, const ControlledPath& free,
                           int first_index, int last_index) {
    ControlledPath next = free;
    if (prob.F != nullptr && prob.F->eval) {
        ControlledPath z =
            drift_convolution(prob.F->eval, current, *prob.U, first_index, last_index);
        next = next + z;
    }
    if (prob.G != nullptr) {
        ControlledPath composed = compose_linear_G(*prob.G, current);
        ControlledPath integ =
            integral_as_controlled(composed, *prob.U, first_index, last_index, config.params);
        next = next + integ;
    }
    return next;
}

IntervalSolve solve_interval(const PicardProblem& prob, const SolveConfig& config,
                             const SpectralElement& y, int first_index, int last_index) {
    const ControlledParams& prm = config.params.base;
    ControlledPath free = free_term(prob, prm, y, first_index, last_index);
    ControlledPath current = free;

    IntervalSolve result{current, 0, {}};
    for (int it = 1; it <= config.picard_max_iter; ++it) {
        ControlledPath next = picard_step(prob, config, current, free, first_index, last_index);
        ControlledPath diff = next - current;
        const double dn = controlled_norm(diff, first_index, last_index).total;
        result.differences.push_back(dn);
        current = std::move(next);
        result.iterations = it;
        if (dn < config.picard_tol) {
            result.path = std::move(current);
            return result;
        }
        if (it >= 2 && dn >= result.differences[it - 2]) {
            throw ConvergenceError(
                "solve_interval: Picard differences stopped contracting on cells [" +
                    std::to_string(first_index) + "," + std::to_string(last_index) + "]",
                result.differences);
        }
    }
    throw ConvergenceError("solve_interval: no fixed point within iteration budget",
                           result.differences);
}

SolutionPath solve_global(const PicardProblem& prob, const SolveConfig& config,
                          const SpectralElement& y,
                          const RoughPathControls* precomputed_controls) {
    config.validate();
    const RoughPathGrid& X = *prob.driver;
    const int m = X.points() - 1;
    const double gp = config.params.gamma() - config.params.p();

    RoughPathControls local;
    const RoughPathControls* controls = precomputed_controls;
    if (controls == nullptr) {
        local = rough_path_controls(X, config.params.gamma(), config.params.p());
        controls = &local;
    }

    GreedySequence greedy =
        greedy_points(controls->total, gp, config.chi, 0, m, config.step_cap);

    SolutionPath sol;
    sol.times = X.times();
    sol.values.assign(m + 1, SpectralElement(prob.scale->modes()));
    sol.greedy_indices = greedy.indices;
    sol.controlled = ControlledPath(ControlledVariant::Tilde, config.params.base, prob.driver,
                                    prob.scale, 0, m);

    SpectralElement state = y;
    sol.values[0] = state;
    sol.controlled.set(0, 0, TensorBlock{state});

    std::deque<std::pair<int, int>> work;
    for (std::size_t s = 0; s + 1 < greedy.indices.size(); ++s)
        work.emplace_back(greedy.indices[s], greedy.indices[s + 1]);

    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        try {
            IntervalSolve part = solve_interval(prob, config, state, a, b);
            for (int t = a; t <= b; ++t) {
                for (int j = 0; j < sol.controlled.levels(); ++j)
                    sol.controlled.set(j, t, part.path.at(j, t));
                sol.values[t] = part.path.at(0, t)[0];
            }
            state = sol.values[b];
            sol.picard_iterations.push_back(part.iterations);
        } catch (const ConvergenceError&) {
            if (b - a <= 1) throw;
            const int mid = (a + b) / 2;
            work.emplace_front(mid, b);
            work.emplace_front(a, mid);
            // record the refinement in the partition actually used
            auto pos = std::find(sol.greedy_indices.begin(), sol.greedy_indices.end(), b);
            sol.greedy_indices.insert(pos, mid);
        }
    }

    for (int t = 0; t <= m; ++t)
        sol.sup_alpha_norm = std::max(
            sol.sup_alpha_norm, prob.scale->alpha_norm(sol.values[t], config.params.alpha()));
    return sol;
}

AprioriBound a_priori_bound(const ControlTable& total_control, double exponent, int first_index,
                            int last_index, double chi, double L, double step_cap) {
    if (!(L >= 1.0)) throw ParameterError("a_priori_bound: need L >= 1");
    GreedySequence greedy =
        greedy_points(total_control, exponent, chi, first_index, last_index, step_cap);
    AprioriBound b;
    b.greedy_count = greedy.count();
    b.P1 = std::exp(b.greedy_count * std::log(3.0 * L));
    b.P0 = (b.P1 - 1.0) / (3.0 * L - 1.0);
    b.P2 = 1.0 + b.P0 + b.P1;
    return b;
}

double estimate_one_step_constant(const SolutionPath& solution, const PicardProblem& prob,
                                  const SolveConfig& config, const RoughPathControls& controls,
                                  double delta2) {
    const double gamma = config.params.gamma();
    const double p = config.params.p();
    const double sigma = config.params.sigma();
    const double alpha = config.params.alpha();
    double L_req = 1.0;
    for (std::size_t s = 0; s + 1 < solution.greedy_indices.size(); ++s) {
        const int a = solution.greedy_indices[s];
        const int b = solution.greedy_indices[s + 1];
        const double norm = controlled_norm(solution.controlled, a, b).total;
        const double dt = solution.times[b] - solution.times[a];
        double bracket = std::pow(dt, delta2) +
                         std::pow(controls.per_level[0].value(a, b), gamma - sigma);
        for (int j = 1; j <= config.params.levels(); ++j)
            bracket += std::pow(controls.per_level[j - 1].value(a, b), j * (gamma - p));
        const double start = prob.scale->alpha_norm(solution.values[a], alpha);
        const double denom = 1.0 + start + bracket * norm;
        if (denom > 0.0) L_req = std::max(L_req, norm / denom);
    }
    return L_req;
}

}  // namespace roughpath
