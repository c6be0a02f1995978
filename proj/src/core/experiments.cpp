#include "core/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <thread>

#include "core/errors.hpp"
#include "core/report.hpp"
#include "core/sewing.hpp"
#include "core/translation.hpp"

namespace roughpath {

namespace {

std::vector<std::string> metadata_lines(const Config& cfg) {
    std::vector<std::string> md;
    const std::string blob = cfg.serialize();
    md.push_back("inputs_hash = " + content_hash(blob));
    std::stringstream ss(blob);
    std::string line;
    while (std::getline(ss, line)) md.push_back(line);
    return md;
}

/// Deterministic parallel map: results land in sample order regardless of
/// scheduling; each worker derives its own seed.
template <typename Fn>
void parallel_samples(int count, Fn&& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

Experiment Experiment::build(const Config& config_in, bool moment_experiment) {
    Config config = config_in;
    config.finalize(moment_experiment);

    Experiment e;
    e.config = config;
    e.scale = std::make_shared<SpectralScale>(config.get_int("modes"));

    const std::string a_mode = config.get_or("a_mode", "sin");
    if (a_mode == "identity")
        e.family = std::make_shared<EvolutionFamily>(EvolutionFamily::identity(e.scale));
    else if (a_mode == "const")
        e.family = std::make_shared<EvolutionFamily>(EvolutionFamily::heat(e.scale));
    else
        e.family = std::make_shared<EvolutionFamily>(
            e.scale, TimeCoefficient::sinusoidal(config.get_double("a_amplitude")));

    e.grid = uniform_grid(0.0, config.get_double("T"), config.get_int("grid"));
    e.sampler = std::make_shared<FbmSampler>(config.get_double("hurst"), e.grid,
                                             config.get_int("dim"));

    e.params = validate_params(config.get_double("gamma"), config.get_double("p"),
                               config.get_double("sigma"), config.get_int("levels"),
                               config.get_double("alpha"), config.get_int("dim"));

    e.solve_config.params = e.params;
    e.solve_config.picard_tol = config.get_double("picard_tol");
    e.solve_config.picard_max_iter = config.get_int("picard_max_iter");
    e.solve_config.chi = config.get_double("chi");
    e.solve_config.step_cap = config.get_double("step_cap");
    e.solve_config.L = config.get_double("L");

    const double g_amp = config.get_double("g_amp");
    if (g_amp != 0.0)
        e.diffusion = std::make_shared<GOperator>(e.scale, config.get_int("dim"),
                                                  config.get_double("sigma"), g_amp);
    const double f_scale = config.get_double("f_scale");
    e.drift = f_scale != 0.0
                  ? DriftFunction::diagonal(e.scale, f_scale, config.get_double("f_delta"))
                  : DriftFunction::zero(e.scale->modes());
    return e;
}

PathSamples Experiment::sample_path(std::uint64_t sample_index) const {
    if (config.has("path_file")) {
        PathSamples p = read_path_csv(config.get("path_file"));
        p.hurst = config.get_double("hurst");
        return p;
    }
    return sampler->sample(derive_seed(config.get_u64("seed"), sample_index));
}

SpectralElement Experiment::initial_datum(const std::string& profile, double rho) const {
    const double alpha = config.get_double("alpha");
    SpectralElement y(scale->modes());
    if (profile == "mode1") {
        y.coef[0] = 1.0;
    } else if (profile == "mode2" && scale->modes() >= 2) {
        y.coef[1] = 1.0;
    } else if (profile == "mixed" && scale->modes() >= 3) {
        y.coef[0] = 1.0;
        y.coef[2] = 1.0;
    } else if (profile == "decay") {
        for (int k = 0; k < scale->modes(); ++k) y.coef[k] = 1.0 / ((k + 1.0) * (k + 1.0));
    } else {
        y.coef[0] = 1.0;
    }
    const double n = scale->alpha_norm(y, alpha);
    y *= rho / n;
    return y;
}

std::vector<SpectralElement> Experiment::initial_sphere(double rho) const {
    return {initial_datum("mode1", rho), initial_datum("mode2", rho), initial_datum("mixed", rho),
            initial_datum("decay", rho)};
}

PicardProblem Experiment::problem() const {
    PicardProblem prob;
    prob.U = family.get();
    prob.G = diffusion.get();
    prob.F = &drift;
    prob.scale = scale;
    return prob;
}

MomentRow empirical_moment(const std::vector<double>& sample, double q) {
    const int m = static_cast<int>(sample.size());
    MomentRow row;
    row.q = q;
    double total = 0.0;
    std::vector<double> powers(m);
    for (int i = 0; i < m; ++i) {
        powers[i] = std::pow(sample[i], q);
        total += powers[i];
    }
    row.moment = total / m;
    // leave-one-out jackknife
    double ss = 0.0;
    for (int i = 0; i < m; ++i) {
        const double loo = (total - powers[i]) / (m - 1);
        ss += (loo - row.moment) * (loo - row.moment);
    }
    row.jackknife_se = std::sqrt((m - 1.0) / m * ss);
    const int half = m / 2;
    double half_total = 0.0;
    for (int i = 0; i < half; ++i) half_total += powers[i];
    row.half_sample_moment = half > 0 ? half_total / half : 0.0;
    return row;
}

namespace {

TailFit ols_tail_fit(const std::vector<double>& logn, const std::vector<double>& loglogp) {
    TailFit fit;
    const int n = static_cast<int>(logn.size());
    fit.usable_bins = n;
    if (n < 3) {
        fit.degenerate = true;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += logn[i];
        sy += loglogp[i];
        sxx += logn[i] * logn[i];
        sxy += logn[i] * loglogp[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12) {
        fit.degenerate = true;
        return fit;
    }
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    return fit;
}

void tail_bins(const std::vector<double>& obs, std::vector<int>& thresholds,
               std::vector<double>& phat, std::vector<double>& se) {
    thresholds.clear();
    phat.clear();
    se.clear();
    const int m = static_cast<int>(obs.size());
    const int nmax = static_cast<int>(*std::max_element(obs.begin(), obs.end()));
    for (int n = 1; n <= nmax; ++n) {
        int exceed = 0;
        for (double v : obs)
            if (v > n) ++exceed;
        const double p = static_cast<double>(exceed) / m;
        thresholds.push_back(n);
        phat.push_back(p);
        se.push_back(std::sqrt(std::max(p * (1.0 - p), 0.0) / m));
        if (exceed == 0) break;
    }
}

TailFit fit_from_bins(const std::vector<int>& thresholds, const std::vector<double>& phat,
                      double sample_count, int min_exceedances) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double exceed = phat[i] * sample_count;
        if (phat[i] <= 0.0 || phat[i] >= 1.0 || exceed < min_exceedances) continue;
        lx.push_back(std::log(static_cast<double>(thresholds[i])));
        ly.push_back(std::log(-std::log(phat[i])));
    }
    return ols_tail_fit(lx, ly);
}

}  // namespace

TailReport fit_tail(const std::vector<double>& observations, double target, int min_exceedances,
                    int bootstrap, std::uint64_t seed) {
    if (observations.empty()) throw ParameterError("fit_tail: empty observation list");
    TailReport rep;
    tail_bins(observations, rep.thresholds, rep.exceedance, rep.std_error);

    const double m = static_cast<double>(observations.size());
    rep.fit = fit_from_bins(rep.thresholds, rep.exceedance, m, min_exceedances);
    rep.fit.target = target;
    if (rep.fit.degenerate) return rep;

    // nonparametric bootstrap band for the slope
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, observations.size() - 1);
    std::vector<double> slopes;
    std::vector<double> resample(observations.size());
    for (int b = 0; b < bootstrap; ++b) {
        for (auto& v : resample) v = observations[pick(rng)];
        std::vector<int> ts;
        std::vector<double> ph, se;
        tail_bins(resample, ts, ph, se);
        TailFit f = fit_from_bins(ts, ph, m, min_exceedances);
        if (!f.degenerate) slopes.push_back(f.slope);
    }
    if (slopes.size() >= 20) {
        std::sort(slopes.begin(), slopes.end());
        rep.fit.ci_lo = slopes[static_cast<std::size_t>(0.025 * (slopes.size() - 1))];
        rep.fit.ci_hi = slopes[static_cast<std::size_t>(0.975 * (slopes.size() - 1))];
    } else {
        rep.fit.ci_lo = rep.fit.slope;
        rep.fit.ci_hi = rep.fit.slope;
    }
    return rep;
}

namespace {

void write_tail_outputs(const TailReport& rep, const Config& cfg, const std::string& out_dir,
                        const std::string& stem) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto md = metadata_lines(cfg);
    {
        CsvWriter csv(out_dir + "/" + stem + ".csv", "n,p_hat,se", md);
        for (std::size_t i = 0; i < rep.thresholds.size(); ++i)
            csv.row({static_cast<double>(rep.thresholds[i]), rep.exceedance[i], rep.std_error[i]});
    }
    {
        CsvWriter csv(out_dir + "/fit.csv", "slope,intercept,ci_lo,ci_hi,target", md);
        csv.row({rep.fit.slope, rep.fit.intercept, rep.fit.ci_lo, rep.fit.ci_hi, rep.fit.target});
    }
    SvgSeries pts, fitline, targetline;
    pts.line = false;
    pts.color = "#1f6fb2";
    for (std::size_t i = 0; i < rep.thresholds.size(); ++i) {
        if (rep.exceedance[i] <= 0.0 || rep.exceedance[i] >= 1.0) continue;
        pts.x.push_back(std::log(static_cast<double>(rep.thresholds[i])));
        pts.y.push_back(std::log(-std::log(rep.exceedance[i])));
    }
    if (!pts.x.empty()) {
        const double x0 = *std::min_element(pts.x.begin(), pts.x.end());
        const double x1 = *std::max_element(pts.x.begin(), pts.x.end());
        fitline.color = "#c03030";
        fitline.x = {x0, x1};
        fitline.y = {rep.fit.intercept + rep.fit.slope * x0, rep.fit.intercept + rep.fit.slope * x1};
        targetline.color = "#30a050";
        const double mid = rep.fit.intercept + rep.fit.slope * 0.5 * (x0 + x1);
        targetline.x = {x0, x1};
        targetline.y = {mid - rep.fit.target * 0.5 * (x1 - x0),
                        mid + rep.fit.target * 0.5 * (x1 - x0)};
    }
    write_svg_plot(out_dir + "/" + stem + ".svg", {pts, fitline, targetline},
                   "stretched-exponential tail fit", "log n", "log(-log P)");
}

}  // namespace

GreedyTailResult run_mc_greedy_tail(const Experiment& exp, const std::string& out_dir) {
    const int samples = exp.config.get_int("samples");
    if (samples < 500) throw ParameterError("run_mc_greedy_tail: need at least 500 samples");
    const double gamma = exp.params.gamma();
    const double p = exp.params.p();
    const double chi = exp.config.get_double("chi");
    const int m = static_cast<int>(exp.grid.size()) - 1;
    const int level = exp.params.levels();

    GreedyTailResult result;
    result.greedy_counts.assign(samples, 0);
    parallel_samples(samples, [&](int i) {
        PathSamples path = exp.sampler->sample(derive_seed(exp.config.get_u64("seed"), i));
        RoughPathGrid lift = lift_path(path, level);
        RoughPathControls controls = rough_path_controls(lift, gamma, p);
        GreedySequence g = greedy_points(controls.total, gamma - p, chi, 0, m);
        result.greedy_counts[i] = g.count();
    });

    std::vector<double> obs(result.greedy_counts.begin(), result.greedy_counts.end());
    const double target = 2.0 * (exp.config.get_double("gamma_prime") - p);
    result.report = fit_tail(obs, target);
    write_tail_outputs(result.report, exp.config, out_dir, "tail");
    return result;
}

MomentResult run_mc_solution_moments(const Experiment& exp, const std::string& out_dir) {
    const int samples = exp.config.get_int("samples");
    const double rho = exp.config.get_double("rho");
    const std::vector<SpectralElement> sphere = exp.initial_sphere(rho);

    MomentResult result;
    result.sup_norms.assign(samples, 0.0);
    std::atomic<int> failures{0};
    parallel_samples(samples, [&](int i) {
        try {
            PathSamples path = exp.sampler->sample(derive_seed(exp.config.get_u64("seed"), i));
            auto lift = std::make_shared<RoughPathGrid>(lift_path(path, exp.params.levels()));
            RoughPathControls controls =
                rough_path_controls(*lift, exp.params.gamma(), exp.params.p());
            PicardProblem prob = exp.problem();
            prob.driver = lift;
            double sup = 0.0;
            for (const auto& y : sphere) {
                SolutionPath sol = solve_global(prob, exp.solve_config, y, &controls);
                sup = std::max(sup, sol.sup_alpha_norm);
            }
            result.sup_norms[i] = sup;
        } catch (const std::exception&) {
            failures.fetch_add(1);
            result.sup_norms[i] = -1.0;
        }
    });
    result.failures = failures.load();
    if (result.failures > 0) {
        if (static_cast<double>(result.failures) / samples > 0.01)
            throw NumericalError("run_mc_solution_moments: more than 1% of solves failed (" +
                                 std::to_string(result.failures) + "/" + std::to_string(samples) + ")");
        std::vector<double> kept;
        for (double v : result.sup_norms)
            if (v >= 0.0) kept.push_back(v);
        result.sup_norms = kept;
    }

    std::vector<double> qs = exp.config.get_list("q_list");
    for (double q : qs) {
        if (q > 10.0) throw ParameterError("run_mc_solution_moments: q must be <= 10");
        result.moments.push_back(empirical_moment(result.sup_norms, q));
    }

    const double target = 2.0 * (exp.config.get_double("gamma_prime") - exp.params.p());
    result.report = fit_tail(result.sup_norms, target);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto md = metadata_lines(exp.config);
    {
        CsvWriter csv(out_dir + "/moments.csv", "q,moment,jackknife_se", md);
        for (const auto& row : result.moments) csv.row({row.q, row.moment, row.jackknife_se});
    }
    write_tail_outputs(result.report, exp.config, out_dir, "tail");
    return result;
}

void run_single(const Experiment& exp, const std::string& stage, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto md = metadata_lines(exp.config);
    const int level = exp.params.levels();
    const double gamma = exp.params.gamma();
    const double p = exp.params.p();

    PathSamples path = exp.sample_path(0);
    write_path_csv(out_dir + "/path.csv", path, md);

    if (stage == "lift") {
        RoughPathGrid lift = lift_path(path, level);
        CsvWriter csv(out_dir + "/lift.csv", "cell,level,index,value", md);
        for (int k = 0; k < lift.cells(); ++k)
            for (int j = 1; j <= level; ++j) {
                const auto& blk = lift.cell(k).block(j);
                for (std::size_t q = 0; q < blk.size(); ++q)
                    csv.row({static_cast<double>(k), static_cast<double>(j),
                             static_cast<double>(q), blk[q]});
            }
        return;
    }
    if (stage == "control") {
        RoughPathGrid lift = lift_path(path, level);
        RoughPathControls controls = rough_path_controls(lift, gamma, p);
        CsvWriter csv(out_dir + "/control.csv", "i,k,t_i,t_k,W", md);
        for (int i = 0; i < controls.total.points(); ++i)
            for (int k = i; k < controls.total.points(); ++k)
                csv.row({static_cast<double>(i), static_cast<double>(k), controls.total.time(i),
                         controls.total.time(k), controls.total.value(i, k)});
        GreedySequence g = greedy_points(controls.total, gamma - p, exp.config.get_double("chi"),
                                         0, controls.total.points() - 1);
        CsvWriter greedy_csv(out_dir + "/greedy.csv", "m,tau_m", md);
        for (std::size_t q = 0; q < g.indices.size(); ++q)
            greedy_csv.row({static_cast<double>(q), controls.total.time(g.indices[q])});
        return;
    }
    if (stage == "integrate") {
        auto lift = std::make_shared<RoughPathGrid>(lift_path(path, level));
        PicardProblem prob = exp.problem();
        prob.driver = lift;
        SpectralElement y = exp.initial_datum(exp.config.get("y0"), exp.config.get_double("rho"));
        ControlledPath free = free_term(prob, exp.params.base, y, 0, lift->cells());
        const GOperator unit_diffusion(exp.scale, exp.params.base.dim, exp.params.sigma());
        const GOperator& g = exp.diffusion ? *exp.diffusion : unit_diffusion;
        ControlledPath integrand = compose_linear_G(g, free);
        DyadicRecord rec =
            sewing_integral(integrand, *exp.family, 0, lift->cells(), exp.params);
        CsvWriter csv(out_dir + "/dyadic.csv", "m,l,increment_norm", md);
        for (std::size_t mm = 0; mm < rec.increment_norms.size(); ++mm)
            for (std::size_t l = 0; l < rec.increment_norms[mm].size(); ++l)
                csv.row({static_cast<double>(mm + 1), static_cast<double>(l),
                         rec.increment_norms[mm][l]});
        return;
    }
    if (stage == "solve") {
        auto lift = std::make_shared<RoughPathGrid>(lift_path(path, level));
        PicardProblem prob = exp.problem();
        prob.driver = lift;
        SpectralElement y = exp.initial_datum(exp.config.get("y0"), exp.config.get_double("rho"));
        SolutionPath sol = solve_global(prob, exp.solve_config, y);
        CsvWriter csv(out_dir + "/solution.csv", "tau,mode,coef", md);
        for (std::size_t t = 0; t < sol.times.size(); ++t)
            for (int k = 0; k < exp.scale->modes(); ++k)
                csv.row({sol.times[t], static_cast<double>(k + 1), sol.values[t].coef[k]});
        RoughPathControls controls = rough_path_controls(*lift, gamma, p);
        AprioriBound bound =
            a_priori_bound(controls.total, gamma - p, 0, lift->cells(),
                           exp.config.get_double("chi"), exp.solve_config.L);
        CsvWriter summary(out_dir + "/summary.csv", "sample,sup_norm,N_greedy,P1,P2,iters", md);
        int iters = 0;
        for (int it : sol.picard_iterations) iters += it;
        summary.row({0.0, sol.sup_alpha_norm, static_cast<double>(bound.greedy_count), bound.P1,
                     bound.P2, static_cast<double>(iters)});
        return;
    }
    if (stage == "translate") {
        RoughPathGrid lift = lift_path(path, level);
        CMElement h;
        h.hurst = exp.config.get_double("hurst");
        h.knots = exp.config.has("cm_knots") ? exp.config.get_list("cm_knots")
                                             : std::vector<double>{exp.config.get_double("T")};
        const double amp = exp.config.get_double("cm_amp");
        h.coeffs.assign(exp.params.base.dim, std::vector<double>(h.knots.size(), amp));
        PathSamples hs = h.sample_on_grid(exp.grid);
        TranslatedPath t = translate(lift, hs);
        CsvWriter csv(out_dir + "/trees.csv", "term,s,t,frobenius_norm", md);
        const int last = lift.points() - 1;
        auto frob = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x * x;
            return std::sqrt(s);
        };
        for (const auto& name : kLevel2Trees)
            csv.row(name + ",0," + std::to_string(exp.grid[last]) + "," +
                    std::to_string(frob(t.tree_term(name, 0, last))));
        if (level >= 3)
            for (const auto& name : kLevel3Trees)
                csv.row(name + ",0," + std::to_string(exp.grid[last]) + "," +
                        std::to_string(frob(t.tree_term(name, 0, last))));
        return;
    }
    throw ParameterError("run_single: unknown stage '" + stage + "'");
}

}  // namespace roughpath
