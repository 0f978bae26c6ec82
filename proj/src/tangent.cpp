#include "rpde/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "rpde/kernels.hpp"
#include "rpde/rng.hpp"

namespace rpde {

void TangentConfig::validate() const {
    if (equation == Equation::Llg) {
        if (!direction_llg) throw std::invalid_argument("tangent: LLG direction required");
        if (base) throw std::invalid_argument("tangent: LLG supports base G = 0 only");
    } else {
        if (!direction) throw std::invalid_argument("tangent: scalar direction required");
        if (base && (!wg || !gw))
            throw std::invalid_argument("tangent: crossed maps required when G != 0");
        if (components < 1) throw std::invalid_argument("tangent: components must be positive");
    }
}

namespace {

// Level-1 driver values only; the tangent equation must not read the
// direction's second level.
void direction_level1(const ScalarDriver& d, std::size_t k, std::vector<double>& w) {
    const std::size_t nx = d.grid.total();
    const Vec x = d.base.inc1(k, k + 1);
    w.assign(nx, 0.0);
    for (int a = 0; a < d.channels(); ++a) {
        const auto& g = d.profiles[static_cast<std::size_t>(a)];
        for (std::size_t node = 0; node < nx; ++node) w[node] += g[node] * x[a];
    }
}

void direction_level1(const SphericalDriver& d, std::size_t k, std::vector<double>& h) {
    const std::size_t nx = d.grid.total();
    const Vec x = d.base.inc1(k, k + 1);
    h.assign(nx * 3, 0.0);
    for (int a = 0; a < 3; ++a)
        for (std::size_t node = 0; node < nx; ++node)
            h[node * 3 + a] = d.profiles[static_cast<std::size_t>(a)][node] * x[a];
}

// ([WG] + [GW])_{t_k, t_{k+1}} contracted with the profiles at every node.
void crossed_forcing(const ScalarDriver& w_drv, const ScalarDriver& g_drv, const CrossMap& wg,
                     const CrossMap& gw, std::size_t k, std::vector<double>& out) {
    const std::size_t nx = w_drv.grid.total();
    const Mat bwg = wg.block(k, k + 1);  // channels of W x channels of G
    const Mat bgw = gw.block(k, k + 1);
    out.assign(nx, 0.0);
    for (int i = 0; i < w_drv.channels(); ++i)
        for (int j = 0; j < g_drv.channels(); ++j) {
            const double c = bwg(i, j) + bgw(j, i);
            const auto& gi = w_drv.profiles[static_cast<std::size_t>(i)];
            const auto& gj = g_drv.profiles[static_cast<std::size_t>(j)];
            for (std::size_t node = 0; node < nx; ++node) out[node] += c * gi[node] * gj[node];
        }
}

void cross3(const double* a, const double* b, double* out) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
}

Field solve_tangent_scalar(const Field& u, const TangentConfig& cfg) {
    const ScalarDriver& w = *cfg.direction;
    const SpaceGrid& grid = w.grid;
    const TimeGrid& times = w.base.grid;
    const int nc = cfg.components;
    const std::size_t nx = grid.total();
    if (u.times.size() != times.size() || u.grid.total() != nx || u.components != nc)
        throw std::invalid_argument("solve_tangent: base solution layout mismatch");

    Field f = Field::zero(grid, times, nc);
    const std::size_t count = f.frame_size();
    std::vector<double> rhs(count), wlev, glev, gwlev, cross;

    double cached_dt = -1.0;
    std::unique_ptr<ImplicitHeat> implicit;

    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times.dt(k);
        const double* xk = f.frame(k);
        const double* us = u.frame(k);

        if (cfg.equation == Equation::ReactionDiffusion) {
            // b2'(u) X minus the Laplacian: X - X |u|^2 - 2 u (u . X)
            for (std::size_t j = 0; j < nx; ++j) {
                double usq = 0.0, dot = 0.0;
                for (int c = 0; c < nc; ++c) {
                    usq += us[j * nc + c] * us[j * nc + c];
                    dot += us[j * nc + c] * xk[j * nc + c];
                }
                for (int c = 0; c < nc; ++c) {
                    const double d =
                        xk[j * nc + c] * (1.0 - usq) - 2.0 * us[j * nc + c] * dot;
                    rhs[j * nc + c] = xk[j * nc + c] + dt * d;
                }
            }
        } else {
            std::copy(xk, xk + count, rhs.begin());
        }

        if (cfg.solver.implicit_laplacian) {
            if (dt != cached_dt) {
                implicit = std::make_unique<ImplicitHeat>(grid, nc, dt);
                cached_dt = dt;
            }
            implicit->apply(rhs.data());
        } else {
            std::vector<double> lap(count);
            kernels::laplacian_1d(xk, lap.data(), nx, nc, 1.0 / (grid.dx() * grid.dx()));
            for (std::size_t i = 0; i < count; ++i) rhs[i] += dt * lap[i];
        }

        direction_level1(w, k, wlev);
        double* next = f.frame(k + 1);
        if (cfg.base) {
            cfg.base->step_levels(k, glev, gwlev);
            crossed_forcing(w, *cfg.base, *cfg.wg, *cfg.gw, k, cross);
            for (std::size_t j = 0; j < nx; ++j)
                for (int c = 0; c < nc; ++c)
                    next[j * nc + c] =
                        rhs[j * nc + c] * (1.0 + glev[j] + gwlev[j]) +
                        (cross[j] + wlev[j]) * us[j * nc + c];
        } else {
            for (std::size_t j = 0; j < nx; ++j)
                for (int c = 0; c < nc; ++c)
                    next[j * nc + c] = rhs[j * nc + c] + wlev[j] * us[j * nc + c];
        }
    }
    return f;
}

Field solve_tangent_llg(const Field& u, const TangentConfig& cfg) {
    const SphericalDriver& w = *cfg.direction_llg;
    const SpaceGrid& grid = w.grid;
    const TimeGrid& times = w.base.grid;
    const std::size_t nx = grid.total();
    if (u.times.size() != times.size() || u.grid.total() != nx || u.components != 3)
        throw std::invalid_argument("solve_tangent: base solution layout mismatch");

    Field f = Field::zero(grid, times, 3);
    const std::size_t count = f.frame_size();
    std::vector<double> rhs(count), gu(count), gx(count), mix(count), dmix(count), hlev;
    const double inv_2dx = 1.0 / (2.0 * grid.dx());

    double cached_dt = -1.0;
    std::unique_ptr<ImplicitHeat> implicit;

    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times.dt(k);
        const double* xk = f.frame(k);
        const double* us = u.frame(k);

        kernels::gradient_1d(us, gu.data(), nx, 3, inv_2dx);
        kernels::gradient_1d(xk, gx.data(), nx, 3, inv_2dx);
        // b3'(u) X minus the Laplacian:
        //   d_x(u x d_x X + X x d_x u) + 2 u (d_x u . d_x X) + |d_x u|^2 X
        for (std::size_t j = 0; j < nx; ++j) {
            double c1[3], c2[3];
            cross3(us + j * 3, gx.data() + j * 3, c1);
            cross3(xk + j * 3, gu.data() + j * 3, c2);
            for (int a = 0; a < 3; ++a) mix[j * 3 + a] = c1[a] + c2[a];
        }
        kernels::gradient_1d(mix.data(), dmix.data(), nx, 3, inv_2dx);
        for (std::size_t j = 0; j < nx; ++j) {
            double dot = 0.0, gu2 = 0.0;
            for (int a = 0; a < 3; ++a) {
                dot += gu[j * 3 + a] * gx[j * 3 + a];
                gu2 += gu[j * 3 + a] * gu[j * 3 + a];
            }
            for (int a = 0; a < 3; ++a)
                rhs[j * 3 + a] = xk[j * 3 + a] +
                                 dt * (dmix[j * 3 + a] + 2.0 * us[j * 3 + a] * dot +
                                       gu2 * xk[j * 3 + a]);
        }

        if (dt != cached_dt) {
            implicit = std::make_unique<ImplicitHeat>(grid, 3, dt);
            cached_dt = dt;
        }
        implicit->apply(rhs.data());

        direction_level1(w, k, hlev);
        double* next = f.frame(k + 1);
        for (std::size_t j = 0; j < nx; ++j) {
            double forced[3];
            cross3(us + j * 3, hlev.data() + j * 3, forced);  // W(h) u = u x h
            for (int a = 0; a < 3; ++a) next[j * 3 + a] = rhs[j * 3 + a] + forced[a];
        }
    }
    return f;
}

}  // namespace

Field solve_tangent(const Field& base_solution, const TangentConfig& cfg) {
    cfg.validate();
    return cfg.equation == Equation::Llg ? solve_tangent_llg(base_solution, cfg)
                                         : solve_tangent_scalar(base_solution, cfg);
}

ConvergenceReport fit_loglog(const std::vector<double>& eps, const std::vector<double>& err) {
    if (eps.size() != err.size()) throw std::invalid_argument("fit_loglog: size mismatch");
    ConvergenceReport r;
    r.eps = eps;
    r.error = err;
    r.in_fit.assign(eps.size(), 0);

    bool any = false;
    for (double e : err)
        if (e > 1e-300) any = true;
    if (!any || eps.size() < 2) {
        r.degenerate = true;
        return r;
    }

    // Floor scan from the largest eps down.
    std::size_t keep = 1;
    r.in_fit[0] = 1;
    for (std::size_t k = 1; k < eps.size(); ++k) {
        if (err[k] <= 1e-300) break;
        const double local = (std::log(err[k]) - std::log(err[k - 1])) /
                             (std::log(eps[k]) - std::log(eps[k - 1]));
        if (local < 0.15) break;
        r.in_fit[k] = 1;
        ++keep;
    }
    if (keep < 2) {
        r.degenerate = true;
        return r;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < keep; ++k) {
        const double x = std::log(eps[k]);
        const double y = std::log(err[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(keep);
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    r.intercept = (sy - r.slope * sx) / n;
    for (std::size_t k = 0; k < keep; ++k)
        r.max_residual = std::max(
            r.max_residual,
            std::fabs(std::log(err[k]) - (r.slope * std::log(eps[k]) + r.intercept)));
    return r;
}

double clt_error(const Field& diff) {
    const std::size_t nt = diff.times.size();
    double linf_h1_sq = 0.0, time_int = 0.0;
    std::vector<double> h2sq(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        linf_h1_sq = std::max(linf_h1_sq, frame_h1_sq(diff.grid, diff.frame(k), diff.components));
        h2sq[k] = frame_h2_sq(diff.grid, diff.frame(k), diff.components);
    }
    for (std::size_t k = 0; k + 1 < nt; ++k)
        time_int += 0.5 * diff.times.dt(k) * (h2sq[k] + h2sq[k + 1]);
    return linf_h1_sq + time_int;
}

namespace {

// {G + tau_s W} as a stacked multichannel lift (channels of G first), the
// W block dilated by s and the cross blocks by the matching single power.
PathLift stacked_dilated(const PathLift& g, const PathLift& w, double s) {
    if (g.points() != w.points()) throw std::invalid_argument("stacked lift: grid mismatch");
    const int dg = g.dim, dw = w.dim;
    CrossMap gw = young_cross(g.grid, g.level1, w.level1);
    CrossMap wg = young_cross(w.grid, w.level1, g.level1);
    PathLift z = PathLift::zero(g.grid, dg + dw, g.pvar_exponent);
    z.geometric = g.geometric && w.geometric;
    for (std::size_t i = 0; i < z.points(); ++i) {
        z.level1[i].head(dg) = g.level1[i];
        z.level1[i].tail(dw) = s * w.level1[i];
        z.level2[i].topLeftCorner(dg, dg) = g.level2[i];
        z.level2[i].topRightCorner(dg, dw) = s * gw.anchor[i];
        z.level2[i].bottomLeftCorner(dw, dg) = s * wg.anchor[i];
        z.level2[i].bottomRightCorner(dw, dw) = s * s * w.level2[i];
    }
    return z;
}

Field forward_solve(Equation eq, const std::vector<double>& u0, int nc, const ScalarDriver& d,
                    const SolverConfig& cfg) {
    return eq == Equation::Heat ? solve_heat(u0, nc, d, cfg)
                                : solve_reaction_diffusion(u0, nc, d, cfg);
}

Field scaled_difference(const Field& ueps, const Field& ubase, double inv_s) {
    Field x = field_difference(ueps, ubase);
    for (double& v : x.data) v *= inv_s;
    return x;
}

ConvergenceReport clt_scalar(const CltSetup& setup) {
    const ScalarDriver& w = *setup.direction;
    const SpaceGrid& grid = w.grid;
    const TimeGrid& times = w.base.grid;

    ScalarDriver zero_driver;
    const ScalarDriver* base = setup.base;
    if (!base) {
        zero_driver.grid = grid;
        zero_driver.base = PathLift::zero(times, w.base.dim, w.base.pvar_exponent);
        zero_driver.profiles = w.profiles;
        base = &zero_driver;
    }
    Field ubase = forward_solve(setup.equation, setup.u0, setup.components, *base, setup.solver);

    TangentConfig tc;
    tc.equation = setup.equation;
    tc.components = setup.components;
    tc.direction = &w;
    tc.solver = setup.solver;
    CrossMap wg, gw;
    if (setup.base) {
        wg = young_cross(w.base, setup.base->base);
        gw = young_cross(setup.base->base, w.base);
        tc.base = setup.base;
        tc.wg = &wg;
        tc.gw = &gw;
    }
    Field x = solve_tangent(ubase, tc);

    ConvergenceReport prelim;
    std::vector<double> errs;
    for (double eps : setup.eps_schedule) {
        const double s = std::sqrt(eps);
        ScalarDriver pd;
        pd.grid = grid;
        if (setup.base) {
            pd.base = stacked_dilated(setup.base->base, w.base, s);
            pd.profiles = setup.base->profiles;
            pd.profiles.insert(pd.profiles.end(), w.profiles.begin(), w.profiles.end());
        } else {
            pd.base = dilate(w.base, s);
            pd.profiles = w.profiles;
        }
        Field ueps = forward_solve(setup.equation, setup.u0, setup.components, pd, setup.solver);
        Field xeps = scaled_difference(ueps, ubase, 1.0 / s);
        errs.push_back(clt_error(field_difference(xeps, x)));
    }
    return fit_loglog(setup.eps_schedule, errs);
}

ConvergenceReport clt_llg(const CltSetup& setup) {
    const SphericalDriver& w = *setup.direction_llg;
    const SpaceGrid& grid = w.grid;
    const TimeGrid& times = w.base.grid;

    SphericalDriver zero_driver;
    zero_driver.grid = grid;
    zero_driver.base = PathLift::zero(times, 3, w.base.pvar_exponent);
    zero_driver.profiles = w.profiles;
    Field ubase = solve_llg(setup.u0, zero_driver, setup.solver);

    std::vector<Field> xeps;
    xeps.reserve(setup.eps_schedule.size());
    for (double eps : setup.eps_schedule) {
        const double s = std::sqrt(eps);
        SphericalDriver pd;
        pd.grid = grid;
        pd.base = dilate(w.base, s);
        pd.profiles = w.profiles;
        Field ueps = solve_llg(setup.u0, pd, setup.solver);
        xeps.push_back(scaled_difference(ueps, ubase, 1.0 / s));
    }

    if (setup.richardson_reference) {
        if (setup.eps_schedule.size() < 4)
            throw std::invalid_argument("clt_experiment: Richardson mode needs >= 4 cells");
        const std::size_t m = setup.eps_schedule.size();
        const double s1 = std::sqrt(setup.eps_schedule[m - 2]);
        const double s2 = std::sqrt(setup.eps_schedule[m - 1]);
        // X + c s1 and X + c s2 combine to X exactly in the leading order.
        Field ref = xeps[m - 2];
        for (std::size_t i = 0; i < ref.data.size(); ++i)
            ref.data[i] = (s2 * xeps[m - 2].data[i] - s1 * xeps[m - 1].data[i]) / (s2 - s1);
        std::vector<double> eps_cells(setup.eps_schedule.begin(), setup.eps_schedule.end() - 2);
        std::vector<double> errs;
        for (std::size_t k = 0; k + 2 < m; ++k)
            errs.push_back(clt_error(field_difference(xeps[k], ref)));
        return fit_loglog(eps_cells, errs);
    }

    TangentConfig tc;
    tc.equation = Equation::Llg;
    tc.direction_llg = &w;
    tc.solver = setup.solver;
    Field x = solve_tangent(ubase, tc);
    std::vector<double> errs;
    for (std::size_t k = 0; k < xeps.size(); ++k)
        errs.push_back(clt_error(field_difference(xeps[k], x)));
    return fit_loglog(setup.eps_schedule, errs);
}

}  // namespace

ConvergenceReport clt_experiment(const CltSetup& setup) {
    if (setup.eps_schedule.size() < 2)
        throw std::invalid_argument("clt_experiment: need at least 2 cells");
    for (std::size_t k = 0; k + 1 < setup.eps_schedule.size(); ++k)
        if (setup.eps_schedule[k + 1] >= setup.eps_schedule[k])
            throw std::invalid_argument("clt_experiment: schedule must be strictly decreasing");
    if (setup.equation == Equation::Llg) {
        if (!setup.direction_llg) throw std::invalid_argument("clt_experiment: direction missing");
        return clt_llg(setup);
    }
    if (!setup.direction) throw std::invalid_argument("clt_experiment: direction missing");
    return clt_scalar(setup);
}

Field ito_solver(const std::vector<double>& u0, int components, const ScalarDriver& driver,
                 double eps, const SolverConfig& cfg) {
    ScalarDriver ito;
    ito.grid = driver.grid;
    ito.base = dilate(ito_corrected(driver.base), std::sqrt(eps));
    ito.profiles = driver.profiles;
    ito.chen_defect_recorded = driver_chen_defect(ito);
    return solve_heat(u0, components, ito, cfg);
}

ProductDriver product_gamma(const SphericalDriver& a, const SphericalDriver& b) {
    if (a.points() != b.points() || a.grid.total() != b.grid.total())
        throw std::invalid_argument("product_gamma: grid mismatch");
    return ProductDriver{&a, &b};
}

namespace {

// out += kron(A, B) for 3x3 blocks, row-major 9x9 output.
void add_kron(const double* a, const double* b, double* out) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    out[(3 * i + k) * 9 + (3 * j + l)] += a[i * 3 + j] * b[k * 3 + l];
}

constexpr double kId3[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

void product_levels_at(const std::vector<double>& ha, const std::vector<double>& wwa,
                       const std::vector<double>& hb, const std::vector<double>& wwb,
                       std::size_t node, double* gamma, double* ggamma) {
    double wa[9], wb[9];
    spherical_w_matrix(ha.data() + node * 3, wa);
    spherical_w_matrix(hb.data() + node * 3, wb);
    std::fill(gamma, gamma + 81, 0.0);
    std::fill(ggamma, ggamma + 81, 0.0);
    add_kron(wa, kId3, gamma);
    add_kron(kId3, wb, gamma);
    add_kron(wwa.data() + node * 9, kId3, ggamma);
    add_kron(wa, wb, ggamma);
    add_kron(kId3, wwb.data() + node * 9, ggamma);
}

}  // namespace

void ProductDriver::levels(std::size_t i, std::size_t j, std::size_t node, double* gamma,
                           double* ggamma) const {
    std::vector<double> ha, wwa, hb, wwb;
    a->levels(i, j, ha, wwa);
    b->levels(i, j, hb, wwb);
    product_levels_at(ha, wwa, hb, wwb, node, gamma, ggamma);
}

double product_chen_defect(const ProductDriver& d, const TripleSampling& sampling) {
    const std::size_t n = d.a->points();
    const std::size_t nx = d.a->grid.total();
    std::vector<double> ha_sr, wwa_sr, hb_sr, wwb_sr;
    std::vector<double> ha_rt, wwa_rt, hb_rt, wwb_rt;
    std::vector<double> ha_st, wwa_st, hb_st, wwb_st;
    auto eval = [&](std::size_t s, std::size_t r, std::size_t t) {
        d.a->levels(s, r, ha_sr, wwa_sr);
        d.b->levels(s, r, hb_sr, wwb_sr);
        d.a->levels(r, t, ha_rt, wwa_rt);
        d.b->levels(r, t, hb_rt, wwb_rt);
        d.a->levels(s, t, ha_st, wwa_st);
        d.b->levels(s, t, hb_st, wwb_st);
        double worst = 0.0;
        double gsr[81], ggsr[81], grt[81], ggrt[81], gst[81], ggst[81];
        for (std::size_t node = 0; node < nx; ++node) {
            product_levels_at(ha_sr, wwa_sr, hb_sr, wwb_sr, node, gsr, ggsr);
            product_levels_at(ha_rt, wwa_rt, hb_rt, wwb_rt, node, grt, ggrt);
            product_levels_at(ha_st, wwa_st, hb_st, wwb_st, node, gst, ggst);
            for (int p = 0; p < 9; ++p)
                for (int q = 0; q < 9; ++q) {
                    double prod = 0.0;
                    for (int m = 0; m < 9; ++m) prod += grt[p * 9 + m] * gsr[m * 9 + q];
                    const double defect =
                        ggst[p * 9 + q] - ggsr[p * 9 + q] - ggrt[p * 9 + q] - prod;
                    worst = std::max(worst, std::fabs(defect));
                }
        }
        return worst;
    };

    double worst = 0.0;
    if (n <= sampling.exhaustive_cutoff) {
        for (std::size_t s = 0; s + 2 < n; ++s)
            for (std::size_t r = s + 1; r + 1 < n; ++r)
                for (std::size_t t = r + 1; t < n; ++t) worst = std::max(worst, eval(s, r, t));
    } else {
        Rng rng(sampling.seed, 0x70726f64ull);
        for (std::size_t k = 0; k < sampling.samples; ++k) {
            std::size_t s = rng.next_u64() % (n - 2);
            std::size_t r = s + 1 + rng.next_u64() % (n - s - 2);
            std::size_t t = r + 1 + rng.next_u64() % (n - r - 1);
            worst = std::max(worst, eval(s, r, t));
        }
    }
    return worst;
}

}  // namespace rpde
