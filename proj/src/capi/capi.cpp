#include "roughpath/roughpath.h"

#include <cstring>
#include <memory>
#include <random>
#include <string>

#include "core/config.hpp"
#include "core/controls.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/gaussian.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/tensor.hpp"

using namespace roughpath;

namespace {

thread_local std::string g_last_error;

rp_status classify(const std::exception& e) {
    g_last_error = e.what();
    if (dynamic_cast<const ConvergenceError*>(&e)) return RP_ERR_CONVERGENCE;
    if (dynamic_cast<const NumericalError*>(&e)) return RP_ERR_NUMERICAL;
    if (dynamic_cast<const DimensionError*>(&e)) return RP_ERR_DIMENSION;
    if (dynamic_cast<const IntervalError*>(&e)) return RP_ERR_INVALID_ARGUMENT;
    if (dynamic_cast<const ParameterError*>(&e)) return RP_ERR_INVALID_ARGUMENT;
    return RP_ERR_INTERNAL;
}

template <typename Fn>
rp_status guarded(Fn&& fn) {
    try {
        fn();
        return RP_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        g_last_error = "unknown error";
        return RP_ERR_INTERNAL;
    }
}

template <typename T, typename Fn>
T* guarded_new(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        classify(e);
        return nullptr;
    } catch (...) {
        g_last_error = "unknown error";
        return nullptr;
    }
}

}  // namespace

struct rp_config {
    Config cfg;
};

struct rp_path {
    PathSamples path;
};

struct rp_lift {
    RoughPathGrid grid;
};

struct rp_table {
    ControlTable total;
    double gamma;
    double p;
};

struct rp_solution {
    SolutionPath sol;
};

extern "C" {

const char* rp_last_error(void) { return g_last_error.c_str(); }

const char* rp_version(void) { return "roughpath 1.0.0"; }

rp_config* rp_config_create(void) {
    return guarded_new<rp_config>([] { return new rp_config{Config::defaults()}; });
}

rp_config* rp_config_load(const char* file) {
    return guarded_new<rp_config>([&] {
        if (file == nullptr) throw ParameterError("rp_config_load: null file name");
        return new rp_config{Config::load(file)};
    });
}

rp_status rp_config_set(rp_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        if (cfg == nullptr || key == nullptr || value == nullptr)
            throw ParameterError("rp_config_set: null argument");
        cfg->cfg.set(key, value);
    });
}

rp_status rp_config_get(const rp_config* cfg, const char* key, char* buf, size_t buflen) {
    return guarded([&] {
        if (cfg == nullptr || key == nullptr || buf == nullptr)
            throw ParameterError("rp_config_get: null argument");
        const std::string v = cfg->cfg.get(key);
        if (v.size() + 1 > buflen) throw ParameterError("rp_config_get: buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
    });
}

void rp_config_free(rp_config* cfg) { delete cfg; }

rp_status rp_run_stage(const rp_config* cfg, const char* stage, const char* out_dir) {
    return guarded([&] {
        if (cfg == nullptr || stage == nullptr || out_dir == nullptr)
            throw ParameterError("rp_run_stage: null argument");
        const std::string s = stage;
        if (s == "tail") {
            Experiment exp = Experiment::build(cfg->cfg);
            run_mc_greedy_tail(exp, out_dir);
        } else if (s == "moments") {
            Experiment exp = Experiment::build(cfg->cfg, true);
            run_mc_solution_moments(exp, out_dir);
        } else {
            Experiment exp = Experiment::build(cfg->cfg);
            run_single(exp, s, out_dir);
        }
    });
}

rp_path* rp_path_sample_fbm(const rp_config* cfg, uint64_t sample_index) {
    return guarded_new<rp_path>([&] {
        if (cfg == nullptr) throw ParameterError("rp_path_sample_fbm: null config");
        Experiment exp = Experiment::build(cfg->cfg);
        return new rp_path{exp.sampler->sample(derive_seed(cfg->cfg.get_u64("seed"), sample_index))};
    });
}

rp_path* rp_path_read_csv(const char* file) {
    return guarded_new<rp_path>([&] {
        if (file == nullptr) throw ParameterError("rp_path_read_csv: null file name");
        return new rp_path{read_path_csv(file)};
    });
}

rp_status rp_path_write_csv(const rp_path* path, const char* file) {
    return guarded([&] {
        if (path == nullptr || file == nullptr) throw ParameterError("rp_path_write_csv: null argument");
        write_path_csv(file, path->path);
    });
}

int rp_path_points(const rp_path* path) { return path ? path->path.points() : 0; }
int rp_path_dim(const rp_path* path) { return path ? path->path.dim() : 0; }

double rp_path_time(const rp_path* path, int i) {
    if (path == nullptr || i < 0 || i >= path->path.points()) return 0.0;
    return path->path.times[i];
}

double rp_path_value(const rp_path* path, int i, int component) {
    if (path == nullptr || i < 0 || i >= path->path.points() || component < 0 ||
        component >= path->path.dim())
        return 0.0;
    return path->path.values[i][component];
}

void rp_path_free(rp_path* path) { delete path; }

rp_lift* rp_lift_create(const rp_path* path, int level) {
    return guarded_new<rp_lift>([&] {
        if (path == nullptr) throw ParameterError("rp_lift_create: null path");
        return new rp_lift{lift_path(path->path, level)};
    });
}

rp_status rp_lift_increment(const rp_lift* lift, int i, int k, int level, double* out,
                            size_t out_len) {
    return guarded([&] {
        if (lift == nullptr || out == nullptr) throw ParameterError("rp_lift_increment: null argument");
        if (level < 0 || level > lift->grid.level())
            throw ParameterError("rp_lift_increment: level out of range");
        const TensorElement inc = lift->grid.query(i, k);
        const auto& blk = inc.block(level);
        if (out_len < blk.size()) throw ParameterError("rp_lift_increment: output buffer too small");
        std::memcpy(out, blk.data(), blk.size() * sizeof(double));
    });
}

double rp_lift_chen_residual(const rp_lift* lift, int trials, uint64_t seed) {
    try {
        if (lift == nullptr || trials < 1) throw ParameterError("rp_lift_chen_residual: bad arguments");
        std::mt19937_64 rng(seed);
        const int m = lift->grid.points();
        std::uniform_int_distribution<int> pick(0, m - 1);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            const TensorElement whole = lift->grid.query(a, c);
            const TensorElement split = lift->grid.query(a, b).mul(lift->grid.query(b, c));
            worst = std::max(worst, whole.max_abs_diff(split));
        }
        return worst;
    } catch (const std::exception& e) {
        classify(e);
        return -1.0;
    }
}

void rp_lift_free(rp_lift* lift) { delete lift; }

rp_table* rp_table_create(const rp_lift* lift, double gamma, double p) {
    return guarded_new<rp_table>([&] {
        if (lift == nullptr) throw ParameterError("rp_table_create: null lift");
        RoughPathControls controls = rough_path_controls(lift->grid, gamma, p);
        return new rp_table{std::move(controls.total), gamma, p};
    });
}

double rp_table_value(const rp_table* table, int i, int k) {
    if (table == nullptr || i < 0 || k < i || k >= table->total.points()) return -1.0;
    return table->total.value(i, k);
}

int rp_table_points(const rp_table* table) { return table ? table->total.points() : 0; }

int rp_table_greedy_count(const rp_table* table, double chi) {
    try {
        if (table == nullptr) throw ParameterError("rp_table_greedy_count: null table");
        GreedySequence g = greedy_points(table->total, table->gamma - table->p, chi, 0,
                                         table->total.points() - 1);
        return g.count();
    } catch (const std::exception& e) {
        classify(e);
        return -1;
    }
}

void rp_table_free(rp_table* table) { delete table; }

rp_solution* rp_solve(const rp_config* cfg, uint64_t sample_index) {
    return guarded_new<rp_solution>([&] {
        if (cfg == nullptr) throw ParameterError("rp_solve: null config");
        Experiment exp = Experiment::build(cfg->cfg);
        PathSamples path = exp.sample_path(sample_index);
        auto lift = std::make_shared<RoughPathGrid>(lift_path(path, exp.params.levels()));
        PicardProblem prob = exp.problem();
        prob.driver = lift;
        SpectralElement y =
            exp.initial_datum(exp.config.get("y0"), exp.config.get_double("rho"));
        return new rp_solution{solve_global(prob, exp.solve_config, y)};
    });
}

int rp_solution_points(const rp_solution* sol) {
    return sol ? static_cast<int>(sol->sol.times.size()) : 0;
}

int rp_solution_modes(const rp_solution* sol) {
    return sol && !sol->sol.values.empty() ? sol->sol.values[0].modes() : 0;
}

double rp_solution_time(const rp_solution* sol, int i) {
    if (sol == nullptr || i < 0 || i >= static_cast<int>(sol->sol.times.size())) return 0.0;
    return sol->sol.times[i];
}

double rp_solution_coef(const rp_solution* sol, int i, int mode) {
    if (sol == nullptr || i < 0 || i >= static_cast<int>(sol->sol.values.size())) return 0.0;
    if (mode < 0 || mode >= sol->sol.values[i].modes()) return 0.0;
    return sol->sol.values[i].coef[mode];
}

double rp_solution_sup_norm(const rp_solution* sol) {
    return sol ? sol->sol.sup_alpha_norm : 0.0;
}

int rp_solution_greedy_count(const rp_solution* sol) {
    return sol ? static_cast<int>(sol->sol.greedy_indices.size()) - 1 : 0;
}

void rp_solution_free(rp_solution* sol) { delete sol; }

}  // extern "C"
