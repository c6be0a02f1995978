#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/controlled.hpp"
#include "core/gaussian.hpp"
#include "core/solver.hpp"
#include "core/spectral.hpp"

namespace roughpath {

/// Everything a run needs, assembled once from a finalized Config.
struct Experiment {
    Config config;
    std::shared_ptr<const SpectralScale> scale;
    std::shared_ptr<EvolutionFamily> family;
    std::shared_ptr<FbmSampler> sampler;
    SewingParams params;
    SolveConfig solve_config;
    std::shared_ptr<GOperator> diffusion;  // may be null (g_amp = 0)
    DriftFunction drift;
    std::vector<double> grid;

    static Experiment build(const Config& config, bool moment_experiment = false);

    PathSamples sample_path(std::uint64_t sample_index) const;
    SpectralElement initial_datum(const std::string& profile, double rho) const;
    std::vector<SpectralElement> initial_sphere(double rho) const;
    PicardProblem problem() const;
};

struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double target = 0.0;
    int usable_bins = 0;
    bool degenerate = false;
};

struct TailReport {
    std::vector<int> thresholds;
    std::vector<double> exceedance;  // P(value > n)
    std::vector<double> std_error;   // binomial
    TailFit fit;
};

/// Empirical exceedance tail of integer-valued observations with a
/// stretched-exponential fit: OLS of log(-log P) on log n over bins with at
/// least `min_exceedances` hits, bootstrap confidence band.
TailReport fit_tail(const std::vector<double>& observations, double target,
                    int min_exceedances = 20, int bootstrap = 200, std::uint64_t seed = 99);

struct GreedyTailResult {
    std::vector<int> greedy_counts;
    TailReport report;
};

GreedyTailResult run_mc_greedy_tail(const Experiment& exp, const std::string& out_dir);

struct MomentRow {
    double q = 0.0;
    double moment = 0.0;
    double jackknife_se = 0.0;
    double half_sample_moment = 0.0;
};

struct MomentResult {
    std::vector<double> sup_norms;  // per sample: sup over initial sphere and time
    std::vector<MomentRow> moments;
    TailReport report;
    int failures = 0;
};

MomentResult run_mc_solution_moments(const Experiment& exp, const std::string& out_dir);

/// One pipeline stage (lift | control | integrate | solve | translate),
/// emitting the owning module's CSV artifacts. Deterministic per seed.
void run_single(const Experiment& exp, const std::string& stage, const std::string& out_dir);

/// q-th moment with leave-one-out jackknife standard error.
MomentRow empirical_moment(const std::vector<double>& sample, double q);

}  // namespace roughpath
