#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "core/controlled.hpp"
#include "core/controls.hpp"
#include "core/sewing.hpp"
#include "core/spectral.hpp"

namespace roughpath {

/// Drift coefficient F: [0,T] x E_alpha -> E_{alpha-delta}, Lipschitz in the
/// state uniformly in time.
struct DriftFunction {
    std::function<SpectralElement(double, const SpectralElement&)> eval;
    double lipschitz = 0.0;
    double delta = 0.0;  // spatial loss

    static DriftFunction zero(int modes);
    /// F(t,y) = scale * Lambda^delta y (diagonal linear, Lipschitz constant |scale|).
    static DriftFunction diagonal(std::shared_ptr<const SpectralScale> scale, double coefficient,
                                  double delta);
    static DriftFunction constant(SpectralElement value);
};

struct SolveConfig {
    SewingParams params;
    double picard_tol = 1e-7;
    int picard_max_iter = 30;
    double chi = 0.2;       // greedy budget on W^{gamma-p}
    double step_cap = 0.5;  // L2: deterministic bound on subinterval length
    double L = 1.0;         // one-step constant entering the Gronwall bound

    void validate() const;
};

struct PicardProblem {
    const EvolutionFamily* U = nullptr;
    const GOperator* G = nullptr;       // nullptr: no diffusion
    const DriftFunction* F = nullptr;   // nullptr: no drift
    std::shared_ptr<const RoughPathGrid> driver;
    std::shared_ptr<const SpectralScale> scale;
};

/// Free-evolution term tau -> U_{tau,s} y as a Tilde path with zero levels.
ControlledPath free_term(const PicardProblem& prob, const ControlledParams& params,
                         const SpectralElement& y, int first_index, int last_index);

/// One Picard application: free term + drift convolution + rough integral of
/// the composed diffusion.
ControlledPath picard_step(const PicardProblem& prob, const SolveConfig& config,
                           const ControlledPath& current, const ControlledPath& free,
                           int first_index, int last_index);

struct IntervalSolve {
    ControlledPath path;
    int iterations = 0;
    std::vector<double> differences;  // Picard differences in the controlled norm
};

/// Fixed-point iteration on one subinterval; throws ConvergenceError when the
/// differences stop contracting (interval too long for this sample).
IntervalSolve solve_interval(const PicardProblem& prob, const SolveConfig& config,
                             const SpectralElement& y, int first_index, int last_index);

struct SolutionPath {
    std::vector<double> times;
    std::vector<SpectralElement> values;       // path component at every grid point
    std::vector<int> greedy_indices;           // subinterval boundaries used
    std::vector<int> picard_iterations;        // per subinterval
    ControlledPath controlled;                 // converged Tilde path on the full range
    double sup_alpha_norm = 0.0;
};

/// Greedy-partitioned global solve with flow concatenation
/// phi(0,t2,y) = phi(t1,t2,phi(0,t1,y)). Subintervals that fail to contract
/// are bisected down to the grid mesh.
SolutionPath solve_global(const PicardProblem& prob, const SolveConfig& config,
                          const SpectralElement& y,
                          const RoughPathControls* precomputed_controls = nullptr);

struct AprioriBound {
    int greedy_count = 0;
    double P0 = 0.0;
    double P1 = 0.0;
    double P2 = 0.0;
};

/// Gronwall constants of the a-priori estimate: P1 = exp(N~ log 3L),
/// P0 = (P1 - 1)/(3L - 1), P2 = 1 + P0 + P1.
AprioriBound a_priori_bound(const ControlTable& total_control, double exponent, int first_index,
                            int last_index, double chi, double L, double step_cap = 0.0);

/// Smallest L >= 1 making the one-step inequality
///   |phi|_{D~[a,b]} <= L (1 + |phi(a)|_alpha + bracket(a,b) |phi|_{D~[a,b]})
/// hold across the subintervals of a solved path; bracket collects the
/// step-size and driver-control terms at exponent delta2.
double estimate_one_step_constant(const SolutionPath& solution, const PicardProblem& prob,
                                  const SolveConfig& config, const RoughPathControls& controls,
                                  double delta2);

}  // namespace roughpath
