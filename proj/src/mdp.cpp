#include "rpde/mdp.hpp"

#include <cmath>
#include <stdexcept>

namespace rpde {

void CameronMartinPath::validate() const {
    grid.validate();
    if (hdot.size() != grid.size())
        throw std::invalid_argument("CameronMartinPath: one derivative sample per grid point");
    for (const auto& v : hdot)
        if (v.size() != dim() || !v.allFinite())
            throw std::invalid_argument("CameronMartinPath: malformed derivative sample");
}

std::vector<Vec> CameronMartinPath::values() const {
    validate();
    std::vector<Vec> h(grid.size(), Vec::Zero(dim()));
    for (std::size_t k = 0; k + 1 < grid.size(); ++k)
        h[k + 1] = h[k] + 0.5 * grid.dt(k) * (hdot[k] + hdot[k + 1]);
    return h;
}

double cm_energy(const CameronMartinPath& h, bool integrand_is_value) {
    h.validate();
    const std::vector<Vec> samples = integrand_is_value ? h.values() : h.hdot;
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < h.grid.size(); ++k)
        e += 0.25 * h.grid.dt(k) *
             (samples[k].squaredNorm() + samples[k + 1].squaredNorm());
    return e;
}

PathLift lift_cm(const CameronMartinPath& h) {
    return PathLift::from_samples(h.grid, h.values(), 1.0);
}

Field solve_skeleton(const CameronMartinPath& h, const Field& base_solution,
                     const ScalarDriver& direction_template, Equation equation,
                     const SolverConfig& cfg) {
    if (equation == Equation::Llg)
        throw std::invalid_argument("solve_skeleton: scalar equations only");
    ScalarDriver dir;
    dir.grid = direction_template.grid;
    dir.base = lift_cm(h);
    dir.profiles = direction_template.profiles;
    if (static_cast<int>(dir.profiles.size()) != dir.base.dim)
        throw std::invalid_argument("solve_skeleton: profile count must match h dimension");

    TangentConfig tc;
    tc.equation = equation;
    tc.components = base_solution.components;
    tc.direction = &dir;
    tc.solver = cfg;
    return solve_tangent(base_solution, tc);
}

RatePoint rate_point(const CameronMartinPath& h, const Field& base_solution,
                     const ScalarDriver& direction_template, Equation equation,
                     const SolverConfig& cfg) {
    RatePoint r{solve_skeleton(h, base_solution, direction_template, equation, cfg),
                cm_energy(h)};
    return r;
}

double LambdaSchedule::lambda(double eps) const { return std::pow(eps, -exponent); }

bool LambdaSchedule::valid(const std::vector<double>& eps_grid) const {
    if (!(exponent > 0.0) || !(exponent < 0.5)) return false;
    if (eps_grid.size() < 2) return false;
    for (std::size_t k = 0; k + 1 < eps_grid.size(); ++k) {
        if (eps_grid[k + 1] >= eps_grid[k]) return false;
        // lambda must grow and sqrt(eps) lambda must shrink as eps decreases.
        if (lambda(eps_grid[k + 1]) <= lambda(eps_grid[k])) return false;
        if (std::sqrt(eps_grid[k + 1]) * lambda(eps_grid[k + 1]) >=
            std::sqrt(eps_grid[k]) * lambda(eps_grid[k]))
            return false;
    }
    return true;
}

std::vector<ExpEquivCell> exp_equivalence_mc(const McConfig& cfg) {
    if (cfg.samples < 100)
        throw std::invalid_argument("exp_equivalence_mc: at least 100 samples required");
    if (!cfg.schedule.valid(cfg.eps_grid))
        throw std::invalid_argument("exp_equivalence_mc: invalid lambda schedule");
    if (cfg.equation == Equation::Llg)
        throw std::invalid_argument("exp_equivalence_mc: scalar equations only");

    const int d = static_cast<int>(cfg.profiles.size());
    ScalarDriver zero;
    zero.grid = cfg.grid;
    zero.base = PathLift::zero(cfg.times, d);
    zero.profiles = cfg.profiles;
    Field ubase = cfg.equation == Equation::Heat
                      ? solve_heat(cfg.u0, cfg.components, zero, cfg.solver)
                      : solve_reaction_diffusion(cfg.u0, cfg.components, zero, cfg.solver);

    std::vector<ExpEquivCell> cells;
    for (std::size_t c = 0; c < cfg.eps_grid.size(); ++c) {
        const double eps = cfg.eps_grid[c];
        const double s = std::sqrt(eps);
        const double lam = cfg.schedule.lambda(eps);
        std::size_t hits = 0;
        for (std::size_t m = 0; m < cfg.samples; ++m) {
            // Per-sample stream: the seed is split by (cell, sample) so cells
            // and samples are independent and reproducible.
            const std::uint64_t sample_seed =
                cfg.seed ^ (0x9e3779b97f4a7c15ull * (c + 1)) ^ (0xbf58476d1ce4e5b9ull * (m + 1));
            PathLift wlift = brownian_lift(sample_seed, cfg.times, cfg.refinement, d);

            ScalarDriver dir;
            dir.grid = cfg.grid;
            dir.base = wlift;
            dir.profiles = cfg.profiles;

            ScalarDriver scaled;
            scaled.grid = cfg.grid;
            scaled.base = dilate(wlift, s);
            scaled.profiles = cfg.profiles;

            Field ueps = cfg.equation == Equation::Heat
                             ? solve_heat(cfg.u0, cfg.components, scaled, cfg.solver)
                             : solve_reaction_diffusion(cfg.u0, cfg.components, scaled,
                                                        cfg.solver);
            Field xeps = field_difference(ueps, ubase);
            for (double& v : xeps.data) v /= s;

            TangentConfig tc;
            tc.equation = cfg.equation;
            tc.components = cfg.components;
            tc.direction = &dir;
            tc.solver = cfg.solver;
            Field x = solve_tangent(ubase, tc);

            const double gap = std::sqrt(clt_error(field_difference(xeps, x)));
            if (gap / lam > cfg.delta) ++hits;
        }
        ExpEquivCell cell;
        cell.eps = eps;
        cell.lambda = lam;
        cell.p_hat = static_cast<double>(hits) / static_cast<double>(cfg.samples);
        if (hits == 0) {
            cell.sentinel = true;
            cell.statistic = -std::log(static_cast<double>(cfg.samples)) / (lam * lam);
        } else {
            cell.statistic = std::log(cell.p_hat) / (lam * lam);
        }
        cells.push_back(cell);
    }
    return cells;
}

bool exp_equivalence_trend_nonincreasing(const std::vector<ExpEquivCell>& cells, double tol) {
    double prev = 0.0;
    bool have_prev = false;
    for (const auto& c : cells) {
        if (c.sentinel) continue;
        if (have_prev && c.statistic > prev + tol) return false;
        prev = c.statistic;
        have_prev = true;
    }
    return true;
}

}  // namespace rpde
