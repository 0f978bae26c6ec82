#include "rpde/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rpde/brownian.hpp"
#include "rpde/io.hpp"
#include "rpde/mdp.hpp"
#include "rpde/pvariation.hpp"

namespace rpde {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const std::string& key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, "wrong type");
    }
}

std::vector<double> default_eps() {
    std::vector<double> e;
    for (int p = 4; p <= 12; ++p) e.push_back(std::ldexp(1.0, -p));
    return e;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("(root)", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("(root)", "config must be a JSON object");
    ExperimentConfig c;
    read_field(j, "experiment", c.experiment);
    read_field(j, "equation", c.equation);
    read_field(j, "space_dim", c.space_dim);
    read_field(j, "space_n", c.space_n);
    read_field(j, "horizon", c.horizon);
    read_field(j, "steps", c.steps);
    read_field(j, "driver_profile", c.driver_profile);
    read_field(j, "driver_param", c.driver_param);
    read_field(j, "channels", c.channels);
    read_field(j, "seed", c.seed);
    read_field(j, "refinement", c.refinement);
    read_field(j, "u0_profile", c.u0_profile);
    read_field(j, "u0_param", c.u0_param);
    read_field(j, "eps", c.eps);
    read_field(j, "lambda_exponent", c.lambda_exponent);
    read_field(j, "delta", c.delta);
    read_field(j, "samples", c.samples);
    read_field(j, "min_slope", c.min_slope);
    read_field(j, "out", c.out_dir);
    read_field(j, "threads", c.threads);
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("(file)", "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::resolved_text() const {
    json j;
    j["experiment"] = experiment;
    j["equation"] = equation;
    j["space_dim"] = space_dim;
    j["space_n"] = space_n;
    j["horizon"] = horizon;
    j["steps"] = steps;
    j["driver_profile"] = driver_profile;
    j["driver_param"] = driver_param;
    j["channels"] = channels;
    j["seed"] = seed;
    j["refinement"] = refinement;
    j["u0_profile"] = u0_profile;
    j["u0_param"] = u0_param;
    j["eps"] = eps.empty() ? default_eps() : eps;
    j["lambda_exponent"] = lambda_exponent;
    j["delta"] = delta;
    j["samples"] = samples;
    j["min_slope"] = min_slope;
    j["out"] = out_dir;
    j["threads"] = threads;
    return j.dump(2);
}

void ExperimentConfig::validate() const {
    const std::vector<std::string> experiments = {"lift-check", "solve",      "clt", "ito-vs-strat",
                                                  "wong-zakai", "mdp",        "suite"};
    if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end())
        throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
    if (equation != "heat" && equation != "reaction-diffusion" && equation != "llg")
        throw ConfigError("equation", "unknown equation '" + equation + "'");
    if (space_dim != 1 && space_dim != 2) throw ConfigError("space_dim", "must be 1 or 2");
    if (space_n < 4) throw ConfigError("space_n", "must be at least 4");
    if (!(horizon > 0.0)) throw ConfigError("horizon", "must be positive");
    if (steps < 1) throw ConfigError("steps", "must be at least 1");
    if (channels < 1) throw ConfigError("channels", "must be at least 1");
    if (refinement < 1 || (refinement & (refinement - 1)) != 0)
        throw ConfigError("refinement", "must be a power of two");
    if (!eps.empty()) {
        if (eps.size() < 2) throw ConfigError("eps", "schedule needs at least 2 cells");
        for (std::size_t k = 0; k + 1 < eps.size(); ++k)
            if (eps[k + 1] >= eps[k]) throw ConfigError("eps", "must be strictly decreasing");
        for (double e : eps)
            if (!(e > 0.0)) throw ConfigError("eps", "entries must be positive");
    }
    if (samples < 100) throw ConfigError("samples", "at least 100 Monte Carlo samples");
    if (threads < 1) throw ConfigError("threads", "must be at least 1");
    if (equation == "llg" && space_dim != 1) throw ConfigError("space_dim", "llg needs dim 1");
    if (equation == "llg" &&
        (experiment == "ito-vs-strat" || experiment == "wong-zakai" || experiment == "mdp"))
        throw ConfigError("experiment", "'" + experiment + "' supports scalar equations only");
}

namespace {

struct Setup {
    SpaceGrid grid;
    TimeGrid times;
    std::vector<std::vector<double>> profiles;
    std::vector<double> u0;
    int components = 1;
    std::vector<double> eps;
    SolverConfig solver;
};

Setup build_setup(const ExperimentConfig& c) {
    Setup s;
    s.grid = SpaceGrid{c.space_dim, c.space_n};
    s.times = TimeGrid::make_uniform(c.horizon, c.steps);
    s.eps = c.eps.empty() ? default_eps() : c.eps;
    const int channels = c.equation == "llg" ? 3 : c.channels;
    for (int a = 0; a < channels; ++a)
        s.profiles.push_back(make_profile(s.grid, c.driver_profile, c.driver_param));
    if (c.equation == "llg") {
        s.components = 3;
        // Unit-sphere initial data: normalized (1, a sin, a cos).
        const auto sn = make_profile(s.grid, "sin", 0.0);
        const auto cs = make_profile(s.grid, "cos", 0.0);
        s.u0.resize(s.grid.total() * 3);
        for (std::size_t j = 0; j < s.grid.total(); ++j) {
            double v[3] = {1.0, c.u0_param * sn[j], c.u0_param * cs[j]};
            const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            for (int a = 0; a < 3; ++a) s.u0[j * 3 + a] = v[a] / r;
        }
    } else {
        s.components = 1;
        s.u0 = make_profile(s.grid, c.u0_profile, c.u0_param);
    }
    return s;
}

Equation parse_equation(const std::string& tag) {
    if (tag == "heat") return Equation::Heat;
    if (tag == "reaction-diffusion") return Equation::ReactionDiffusion;
    return Equation::Llg;
}

Field forward(const ExperimentConfig& c, const Setup& s, const ScalarDriver& d) {
    return c.equation == "heat" ? solve_heat(s.u0, s.components, d, s.solver)
                                : solve_reaction_diffusion(s.u0, s.components, d, s.solver);
}

void run_lift_check(const ExperimentConfig& c, const Setup& s, const std::string& dir,
                    const std::string& hash, RunRecord& rec) {
    PathLift lift = brownian_lift(c.seed, s.times, c.refinement, c.channels);
    const double chen = chen_defect(lift);
    const double geo = geometricity_defect(lift);
    const double pv = p_variation(lift.level1, lift.pvar_exponent);
    save_lift_csv(lift, dir + "/lift.csv", hash);
    rec.artifacts.push_back(dir + "/lift.csv");
    json j;
    j["config"] = hash;
    j["chen_defect"] = chen;
    j["geometricity_defect"] = geo;
    j["p_variation"] = pv;
    std::ofstream(dir + "/lift_check.json") << j.dump(2) << "\n";
    rec.artifacts.push_back(dir + "/lift_check.json");
    const bool pass = chen <= 1e-10 && geo <= 1e-10;
    rec.summary.push_back(std::string("lift-check: chen=") + std::to_string(chen) +
                          " geom=" + std::to_string(geo) + (pass ? " pass" : " FAIL"));
    if (!pass) rec.exit_code = 1;
}

void run_solve(const ExperimentConfig& c, const Setup& s, const std::string& dir,
               const std::string& hash, RunRecord& rec) {
    PathLift lift = brownian_lift(c.seed, s.times, c.refinement,
                                  c.equation == "llg" ? 3 : c.channels);
    Field f;
    if (c.equation == "llg") {
        SphericalDriver d = make_llg_driver(
            lift, s.grid, {s.profiles[0], s.profiles[1], s.profiles[2]});
        f = solve_llg(s.u0, d, s.solver);
    } else {
        ScalarDriver d = make_scalar_driver(lift, s.grid, s.profiles);
        f = forward(c, s, d);
    }
    save_field_csv(f, dir + "/field.csv", hash);
    rec.artifacts.push_back(dir + "/field.csv");
    const FieldNorms n = discrete_norms(f);
    const EnergyReport er = energy_report(f, s.u0);
    json j;
    j["config"] = hash;
    j["linf_l2"] = n.linf_l2;
    j["linf_h1"] = n.linf_h1;
    j["l2_h2"] = n.l2_h2;
    j["pvar_l2"] = n.pvar_l2;
    j["energy_constant"] = er.constant;
    std::ofstream(dir + "/norms.json") << j.dump(2) << "\n";
    rec.artifacts.push_back(dir + "/norms.json");
    rec.summary.push_back("solve: linf_l2=" + std::to_string(n.linf_l2) + " pass");
}

void run_clt(const ExperimentConfig& c, const Setup& s, const std::string& dir,
             const std::string& hash, RunRecord& rec) {
    CltSetup setup;
    setup.equation = parse_equation(c.equation);
    setup.u0 = s.u0;
    setup.components = s.components;
    setup.eps_schedule = s.eps;
    setup.solver = s.solver;

    ScalarDriver dir_scalar;
    SphericalDriver dir_llg;
    if (setup.equation == Equation::Llg) {
        PathLift lift = brownian_lift(c.seed, s.times, c.refinement, 3);
        dir_llg = make_llg_driver(lift, s.grid, {s.profiles[0], s.profiles[1], s.profiles[2]});
        setup.direction_llg = &dir_llg;
        setup.richardson_reference = true;
    } else {
        PathLift lift = brownian_lift(c.seed, s.times, c.refinement, c.channels);
        dir_scalar = make_scalar_driver(lift, s.grid, s.profiles);
        setup.direction = &dir_scalar;
    }
    ConvergenceReport r = clt_experiment(setup);
    save_report_json(r, dir + "/clt.json", hash);
    save_report_csv(r, dir + "/clt.csv", hash);
    save_loglog_plot_data(r, dir + "/clt_loglog.dat", hash);
    save_loglog_svg(r, dir + "/clt.svg");
    for (const char* a : {"/clt.json", "/clt.csv", "/clt_loglog.dat", "/clt.svg"})
        rec.artifacts.push_back(dir + a);
    const bool pass = !r.degenerate && r.slope >= c.min_slope;
    rec.summary.push_back("clt: slope=" + std::to_string(r.slope) +
                          (r.degenerate ? " degenerate" : "") + (pass ? " pass" : " FAIL"));
    if (!pass) rec.exit_code = 1;
}

void run_ito_vs_strat(const ExperimentConfig& c, const Setup& s, const std::string& dir,
                      const std::string& hash, RunRecord& rec) {
    PathLift lift = brownian_lift(c.seed, s.times, c.refinement, c.channels);
    ScalarDriver base = make_scalar_driver(lift, s.grid, s.profiles);
    std::vector<double> gaps;
    for (double eps : s.eps) {
        ScalarDriver strat;
        strat.grid = s.grid;
        strat.base = dilate(lift, std::sqrt(eps));
        strat.profiles = s.profiles;
        Field us = solve_heat(s.u0, s.components, strat, s.solver);
        Field ui = ito_solver(s.u0, s.components, base, eps, s.solver);
        gaps.push_back(linf_l2_gap(us, ui));
    }
    ConvergenceReport r = fit_loglog(s.eps, gaps);
    save_report_json(r, dir + "/ito_vs_strat.json", hash);
    save_report_csv(r, dir + "/ito_vs_strat.csv", hash);
    rec.artifacts.push_back(dir + "/ito_vs_strat.json");
    rec.artifacts.push_back(dir + "/ito_vs_strat.csv");
    const bool pass = !r.degenerate && r.slope >= c.min_slope;
    rec.summary.push_back("ito-vs-strat: slope=" + std::to_string(r.slope) +
                          (pass ? " pass" : " FAIL"));
    if (!pass) rec.exit_code = 1;
}

void run_wong_zakai(const ExperimentConfig& c, const Setup& s, const std::string& dir,
                    const std::string& hash, RunRecord& rec) {
    const int refinements[] = {4, 16, 64, 256};
    std::vector<Field> sols;
    for (int r : refinements) {
        PathLift lift = brownian_lift(c.seed, s.times, r, c.channels);
        ScalarDriver d;
        d.grid = s.grid;
        d.base = lift;
        d.profiles = s.profiles;
        sols.push_back(forward(c, s, d));
    }
    std::vector<double> gaps;
    for (std::size_t k = 0; k + 1 < sols.size(); ++k)
        gaps.push_back(linf_l2_gap(sols[k], sols[k + 1]));
    json j;
    j["config"] = hash;
    j["refinements"] = std::vector<int>(refinements, refinements + 4);
    j["consecutive_gaps"] = gaps;
    std::ofstream(dir + "/wong_zakai.json") << j.dump(2) << "\n";
    rec.artifacts.push_back(dir + "/wong_zakai.json");
    // Single-channel lifts have no area correction, so the ladder converges
    // to roundoff immediately; gaps at that level carry no ordering.
    bool pass = true;
    for (std::size_t k = 0; k + 1 < gaps.size(); ++k)
        if (gaps[k + 1] >= gaps[k] && gaps[k + 1] > 1e-12) pass = false;
    rec.summary.push_back(std::string("wong-zakai: gaps decreasing ") +
                          (pass ? "pass" : "FAIL"));
    if (!pass) rec.exit_code = 1;
}

void run_mdp(const ExperimentConfig& c, const Setup& s, const std::string& dir,
             const std::string& hash, RunRecord& rec) {
    // Skeleton point for hdot = 1 per channel.
    CameronMartinPath h;
    h.grid = s.times;
    h.hdot.assign(s.times.size(), Vec::Ones(c.channels));
    ScalarDriver tmpl;
    tmpl.grid = s.grid;
    tmpl.base = PathLift::zero(s.times, c.channels);
    tmpl.profiles = s.profiles;
    Field ubase = forward(c, s, tmpl);
    RatePoint rp = rate_point(h, ubase, tmpl, parse_equation(c.equation), s.solver);
    save_field_csv(rp.image, dir + "/skeleton.csv", hash);
    rec.artifacts.push_back(dir + "/skeleton.csv");

    McConfig mc;
    mc.eps_grid = s.eps;
    mc.schedule.exponent = c.lambda_exponent;
    mc.delta = c.delta;
    mc.samples = c.samples;
    mc.seed = c.seed;
    mc.refinement = 1;
    mc.equation = parse_equation(c.equation);
    mc.u0 = s.u0;
    mc.components = s.components;
    mc.grid = s.grid;
    mc.times = s.times;
    mc.profiles = s.profiles;
    mc.solver = s.solver;
    std::vector<ExpEquivCell> cells = exp_equivalence_mc(mc);

    std::ofstream table(dir + "/exp_equivalence.csv");
    table << "# rpde-mdp v1 config=" << hash << "\n";
    table << "eps,lambda,p_hat,statistic,sentinel\n";
    for (const auto& cell : cells)
        table << cell.eps << ',' << cell.lambda << ',' << cell.p_hat << ',' << cell.statistic
              << ',' << (cell.sentinel ? 1 : 0) << "\n";
    table.close();
    rec.artifacts.push_back(dir + "/exp_equivalence.csv");

    const bool trend = exp_equivalence_trend_nonincreasing(cells);
    json j;
    j["config"] = hash;
    j["rate_upper_bound"] = rp.energy;
    j["trend_nonincreasing"] = trend;
    std::ofstream(dir + "/mdp.json") << j.dump(2) << "\n";
    rec.artifacts.push_back(dir + "/mdp.json");
    rec.summary.push_back(std::string("mdp: E(h)=") + std::to_string(rp.energy) + " trend " +
                          (trend ? "pass" : "FAIL"));
    if (!trend) rec.exit_code = 1;
}

}  // namespace

RunRecord run(const ExperimentConfig& config) {
    RunRecord rec;
    rec.config = config;
    try {
        config.validate();
    } catch (const ConfigError& e) {
        rec.exit_code = 2;
        rec.summary.push_back(std::string("config error: ") + e.what());
        return rec;
    }
    const std::string resolved = config.resolved_text();
    rec.hash = config_hash(resolved);
    const std::string dir = config.out_dir;
    try {
        std::filesystem::create_directories(dir);
        std::ofstream(dir + "/config.json") << resolved << "\n";
        rec.artifacts.push_back(dir + "/config.json");

        Setup s = build_setup(config);
        auto dispatch = [&](const std::string& tag) {
            if (tag == "lift-check") run_lift_check(config, s, dir, rec.hash, rec);
            else if (tag == "solve") run_solve(config, s, dir, rec.hash, rec);
            else if (tag == "clt") run_clt(config, s, dir, rec.hash, rec);
            else if (tag == "ito-vs-strat") run_ito_vs_strat(config, s, dir, rec.hash, rec);
            else if (tag == "wong-zakai") run_wong_zakai(config, s, dir, rec.hash, rec);
            else if (tag == "mdp") run_mdp(config, s, dir, rec.hash, rec);
        };
        if (config.experiment == "suite") {
            for (const char* tag : {"lift-check", "solve", "clt"}) dispatch(tag);
            if (config.equation != "llg")
                for (const char* tag : {"ito-vs-strat", "wong-zakai", "mdp"}) dispatch(tag);
        } else {
            dispatch(config.experiment);
        }
    } catch (const ConfigError& e) {
        rec.exit_code = 2;
        rec.summary.push_back(std::string("config error: ") + e.what());
    } catch (const std::exception& e) {
        rec.exit_code = 1;
        rec.summary.push_back(std::string("numeric failure: ") + e.what());
    }
    return rec;
}

RunRecord run_file(const std::string& config_path) {
    try {
        return run(ExperimentConfig::from_file(config_path));
    } catch (const ConfigError& e) {
        RunRecord rec;
        rec.exit_code = 2;
        rec.summary.push_back(std::string("config error: ") + e.what());
        return rec;
    }
}

}  // namespace rpde
