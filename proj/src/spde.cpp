#include "rpde/spde.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "rpde/kernels.hpp"

namespace rpde {

ImplicitHeat::ImplicitHeat(const SpaceGrid& grid, int components, double dt)
    : grid_(grid), components_(components) {
    grid.validate();
    if (components < 1) throw std::invalid_argument("ImplicitHeat: components must be positive");
    if (dt < 0.0) throw std::invalid_argument("ImplicitHeat: negative time step");
    alpha_ = dt / (grid.dx() * grid.dx());
    const std::size_t n = static_cast<std::size_t>(grid.n);
    line_.resize(n);
    if (alpha_ == 0.0) return;

    // Periodic system (1 + 2a) on the diagonal, -a off-diagonal and in the
    // corners. Corners removed by the rank-one update M = B + u v^T with
    // u = (g, 0, .., -a), v = (1, 0, .., -a/g), g = -(1 + 2a).
    const double a = -alpha_;
    gamma_ = -(1.0 + 2.0 * alpha_);
    std::vector<double> diag(n, 1.0 + 2.0 * alpha_);
    diag[0] -= gamma_;
    diag[n - 1] -= alpha_ * alpha_ / gamma_;

    cprime_.resize(n);
    inv_den_.resize(n);
    inv_den_[0] = 1.0 / diag[0];
    cprime_[0] = a * inv_den_[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double den = diag[i] - a * cprime_[i - 1];
        inv_den_[i] = 1.0 / den;
        cprime_[i] = a * inv_den_[i];
    }

    q_.assign(n, 0.0);
    q_[0] = gamma_;
    q_[n - 1] = -alpha_;
    // Thomas solve B q = u reusing the factorization.
    q_[0] *= inv_den_[0];
    for (std::size_t i = 1; i < n; ++i) q_[i] = (q_[i] - a * q_[i - 1]) * inv_den_[i];
    for (std::size_t i = n - 1; i-- > 0;) q_[i] -= cprime_[i] * q_[i + 1];
    corr_den_ = 1.0 + q_[0] - (alpha_ / gamma_) * q_[n - 1];
}

void ImplicitHeat::solve_line(double* x) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    const double a = -alpha_;
    x[0] *= inv_den_[0];
    for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - a * x[i - 1]) * inv_den_[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cprime_[i] * x[i + 1];
    const double fac = (x[0] - (alpha_ / gamma_) * x[n - 1]) / corr_den_;
    for (std::size_t i = 0; i < n; ++i) x[i] -= fac * q_[i];
}

void ImplicitHeat::apply(double* u) const {
    if (alpha_ == 0.0) return;
    const std::size_t n = static_cast<std::size_t>(grid_.n);
    const int nc = components_;
    if (grid_.dim == 1) {
        for (int c = 0; c < nc; ++c) {
            for (std::size_t j = 0; j < n; ++j) line_[j] = u[j * nc + c];
            solve_line(line_.data());
            for (std::size_t j = 0; j < n; ++j) u[j * nc + c] = line_[j];
        }
        return;
    }
    // 2-D split: lines along axis 1 (stride n*nc), then axis 2 (stride nc).
    for (std::size_t j2 = 0; j2 < n; ++j2)
        for (int c = 0; c < nc; ++c) {
            for (std::size_t j1 = 0; j1 < n; ++j1) line_[j1] = u[(j1 * n + j2) * nc + c];
            solve_line(line_.data());
            for (std::size_t j1 = 0; j1 < n; ++j1) u[(j1 * n + j2) * nc + c] = line_[j1];
        }
    for (std::size_t j1 = 0; j1 < n; ++j1)
        for (int c = 0; c < nc; ++c) {
            for (std::size_t j2 = 0; j2 < n; ++j2) line_[j2] = u[(j1 * n + j2) * nc + c];
            solve_line(line_.data());
            for (std::size_t j2 = 0; j2 < n; ++j2) u[(j1 * n + j2) * nc + c] = line_[j2];
        }
}

namespace {

void check_blowup(const double* u, std::size_t count, std::size_t step, double limit) {
    for (std::size_t i = 0; i < count; ++i)
        if (!std::isfinite(u[i]) || std::fabs(u[i]) > limit)
            throw std::runtime_error("solver blow-up at step " + std::to_string(step));
}

enum class ScalarDrift { None, Cubic };

Field solve_scalar(const std::vector<double>& u0, int nc, const ScalarDriver& driver,
                   const SolverConfig& cfg, ScalarDrift drift) {
    const SpaceGrid& grid = driver.grid;
    const TimeGrid& times = driver.base.grid;
    const std::size_t nx = grid.total();
    if (u0.size() != nx * static_cast<std::size_t>(nc))
        throw std::invalid_argument("solve: initial data size mismatch");

    Field f = Field::zero(grid, times, nc);
    std::copy(u0.begin(), u0.end(), f.frame(0));

    const std::size_t count = f.frame_size();
    std::vector<double> rhs(count), reac(count), lap(count), w, ww;
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());

    double cached_dt = -1.0;
    std::unique_ptr<ImplicitHeat> implicit;

    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times.dt(k);
        const double* cur = f.frame(k);

        if (drift == ScalarDrift::Cubic) {
            kernels::reaction_cubic(cur, reac.data(), nx, nc);
            for (std::size_t i = 0; i < count; ++i) rhs[i] = cur[i] + dt * reac[i];
        } else {
            std::copy(cur, cur + count, rhs.begin());
        }

        if (cfg.implicit_laplacian) {
            if (dt != cached_dt) {
                implicit = std::make_unique<ImplicitHeat>(grid, nc, dt);
                cached_dt = dt;
            }
            implicit->apply(rhs.data());
        } else {
            if (grid.dim != 1)
                throw std::invalid_argument("explicit Laplacian implemented for dim 1 only");
            kernels::laplacian_1d(cur, lap.data(), nx, nc, inv_dx2);
            for (std::size_t i = 0; i < count; ++i) rhs[i] += dt * lap[i];
        }

        driver.step_levels(k, w, ww);
        kernels::apply_scalar_noise(rhs.data(), w.data(), ww.data(), f.frame(k + 1), nx, nc);
        check_blowup(f.frame(k + 1), count, k + 1, cfg.blowup_limit);
    }
    return f;
}

}  // namespace

Field solve_heat(const std::vector<double>& u0, int components, const ScalarDriver& driver,
                 const SolverConfig& cfg) {
    return solve_scalar(u0, components, driver, cfg, ScalarDrift::None);
}

Field solve_reaction_diffusion(const std::vector<double>& u0, int components,
                               const ScalarDriver& driver, const SolverConfig& cfg) {
    return solve_scalar(u0, components, driver, cfg, ScalarDrift::Cubic);
}

Field solve_llg(const std::vector<double>& u0, const SphericalDriver& driver,
                const SolverConfig& cfg, SolveStats* stats) {
    const SpaceGrid& grid = driver.grid;
    if (grid.dim != 1) throw std::invalid_argument("solve_llg: one-dimensional domain only");
    const TimeGrid& times = driver.base.grid;
    const std::size_t nx = grid.total();
    if (u0.size() != nx * 3) throw std::invalid_argument("solve_llg: initial data size mismatch");
    for (std::size_t j = 0; j < nx; ++j) {
        const double r = std::sqrt(u0[j * 3] * u0[j * 3] + u0[j * 3 + 1] * u0[j * 3 + 1] +
                                   u0[j * 3 + 2] * u0[j * 3 + 2]);
        if (std::fabs(r - 1.0) > 1e-12)
            throw std::invalid_argument("solve_llg: initial data must be sphere-valued");
    }

    Field f = Field::zero(grid, times, 3);
    std::copy(u0.begin(), u0.end(), f.frame(0));

    const std::size_t count = f.frame_size();
    std::vector<double> rhs(count), lap(count), grad(count), gam(count), h, ww;
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    const double inv_2dx = 1.0 / (2.0 * grid.dx());

    SolveStats local;
    double cached_dt = -1.0;
    std::unique_ptr<ImplicitHeat> implicit;

    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times.dt(k);
        const double* cur = f.frame(k);

        kernels::laplacian_1d(cur, lap.data(), nx, 3, inv_dx2);
        kernels::gradient_1d(cur, grad.data(), nx, 3, inv_2dx);
        kernels::llg_gamma(cur, lap.data(), grad.data(), gam.data(), nx);
        if (cfg.implicit_laplacian) {
            for (std::size_t i = 0; i < count; ++i) rhs[i] = cur[i] + dt * gam[i];
            if (dt != cached_dt) {
                implicit = std::make_unique<ImplicitHeat>(grid, 3, dt);
                cached_dt = dt;
            }
            implicit->apply(rhs.data());
        } else {
            for (std::size_t i = 0; i < count; ++i) rhs[i] = cur[i] + dt * (lap[i] + gam[i]);
        }

        driver.step_levels(k, h, ww);
        double* next = f.frame(k + 1);
        if (cfg.llg_noise == SolverConfig::LlgNoise::ExactExponential) {
            std::copy(rhs.begin(), rhs.end(), next);
            kernels::rotate_exact(next, h.data(), nx);
        } else {
            for (std::size_t j = 0; j < nx; ++j) {
                const double* v = rhs.data() + j * 3;
                double wmat[9];
                spherical_w_matrix(h.data() + j * 3, wmat);
                const double* m = ww.data() + j * 9;
                for (int a = 0; a < 3; ++a) {
                    double s = v[a];
                    for (int b = 0; b < 3; ++b)
                        s += (wmat[a * 3 + b] + m[a * 3 + b]) * v[b];
                    next[j * 3 + a] = s;
                }
            }
        }

        if (cfg.llg_renormalize) {
            const double drift_mag = kernels::renormalize_sphere(next, nx);
            local.max_sphere_drift = std::max(local.max_sphere_drift, drift_mag);
        } else {
            for (std::size_t j = 0; j < nx; ++j) {
                const double* v = next + j * 3;
                const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                local.max_sphere_drift = std::max(local.max_sphere_drift, std::fabs(1.0 - r));
            }
        }
        check_blowup(next, count, k + 1, cfg.blowup_limit);
    }
    local.sphere_warning = local.max_sphere_drift > cfg.sphere_warn_tol;
    if (stats) *stats = local;
    return f;
}

}  // namespace rpde
