#pragma once

#include <cstddef>
#include <vector>

#include "rpde/drivers.hpp"
#include "rpde/field.hpp"

namespace rpde {

struct SolverConfig {
    bool implicit_laplacian = true;  // backward Euler for the Laplacian, CFL-free
    enum class LlgNoise { ExactExponential, SecondOrderAffine };
    LlgNoise llg_noise = LlgNoise::ExactExponential;
    bool llg_renormalize = true;
    double sphere_warn_tol = 1e-6;
    double blowup_limit = 1e12;
};

// Per-run diagnostics; solvers abort (throw) on blow-up, everything softer
// lands here.
struct SolveStats {
    double max_sphere_drift = 0.0;  // worst |1 - |u|| before renormalization
    bool sphere_warning = false;
};

// Backward-Euler application of (I - dt Lap_h)^{-1} on a single frame,
// periodic second differences. In 2-D the operator is split per axis
// (I - dt D1)(I - dt D2), a first-order-consistent factorization. The
// periodic tridiagonal systems are solved by the Thomas algorithm with a
// Sherman-Morrison corner correction, factorized once per (n, dt).
class ImplicitHeat {
public:
    ImplicitHeat(const SpaceGrid& grid, int components, double dt);

    void apply(double* u) const;  // in place

private:
    void solve_line(double* x) const;  // one periodic line of length n

    SpaceGrid grid_;
    int components_;
    double alpha_;                 // dt / dx^2
    std::vector<double> cprime_;   // Thomas forward-elimination coefficients
    std::vector<double> inv_den_;  // 1 / pivot per row
    std::vector<double> q_;        // B^{-1} u of the corner correction
    double corr_den_ = 1.0;        // 1 + v^T q
    double gamma_ = 0.0;
    mutable std::vector<double> line_;
};

// Drift-then-noise splitting per step of the driver's time grid:
//   u* = (I - dt Lap)^{-1} (u_k + dt gamma(u_k)),  gamma explicit,
//   u_{k+1} = u* + W_{t_k,t_{k+1}} u* + WW_{t_k,t_{k+1}} u*.
Field solve_heat(const std::vector<double>& u0, int components, const ScalarDriver& driver,
                 const SolverConfig& cfg);

// Heat splitting with the cubic reaction gamma(u) = u (1 - |u|^2) fed into
// the drift sub-step.
Field solve_reaction_diffusion(const std::vector<double>& u0, int components,
                               const ScalarDriver& driver, const SolverConfig& cfg);

// Sphere-valued 1-D dynamics u_t = u'' + u x u'' + u |u'|^2 with the
// antisymmetric driver applied as an exact rotation exp(W_{t_k,t_{k+1}}(x))
// (affine I + W + WW mode behind the config flag). The geometric drift
// terms are explicit; the Laplacian stays inside the implicit solve so the
// dt <= dx^2 restriction never applies.
Field solve_llg(const std::vector<double>& u0, const SphericalDriver& driver,
                const SolverConfig& cfg, SolveStats* stats = nullptr);

}  // namespace rpde
