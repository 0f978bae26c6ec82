#pragma once

#include <vector>

#include "rpde/spde.hpp"
#include "rpde/young.hpp"

namespace rpde {

enum class Equation { Heat, ReactionDiffusion, Llg };

// Directional-derivative (tangent) equation
//   dX = b'(u) X dt + G X + GG X + ([WG] + [GW]) u_s + W u_s,
// solved with the same drift/noise splitting as the forward solvers.
// Only level 1 of the direction W enters; crossed maps are required
// exactly when the base driver G is nonzero.
struct TangentConfig {
    Equation equation = Equation::Heat;
    int components = 1;                            // scalar equations only (LLG is 3)
    const ScalarDriver* base = nullptr;            // G; null means G = 0
    const ScalarDriver* direction = nullptr;       // W for heat / reaction-diffusion
    const SphericalDriver* direction_llg = nullptr;  // W for LLG (G = 0 only)
    const CrossMap* wg = nullptr;                  // [X^W X^G] on the base lifts
    const CrossMap* gw = nullptr;                  // [X^G X^W]
    SolverConfig solver;

    void validate() const;
};

// base_solution is the forward solution u the derivative is taken at,
// evaluated at each step's left endpoint. X starts from zero.
Field solve_tangent(const Field& base_solution, const TangentConfig& cfg);

// Log-log rate fit with discretization-floor exclusion: scanning from the
// largest eps down, points are dropped once the local slope falls under
// 0.15 (the error has stopped decreasing).
struct ConvergenceReport {
    std::vector<double> eps;
    std::vector<double> error;
    std::vector<char> in_fit;
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    bool degenerate = false;  // all errors vanish (zero direction), no fit
};

ConvergenceReport fit_loglog(const std::vector<double>& eps, const std::vector<double>& err);

// Squared-energy functional sup_t |f|^2_{H1} + int |f|^2_{H2} without the
// p-variation term (the CLT error metric).
double clt_error(const Field& diff);

// The CLT experiment: u^eps = Phi({G + tau_sqrt(eps) W}), X^eps =
// (u^eps - Phi(G)) / sqrt(eps), compared against X = solve_tangent in the
// squared-energy norm, one fixed direction lift for the whole sweep.
struct CltSetup {
    Equation equation = Equation::Heat;
    std::vector<double> u0;
    int components = 1;
    const ScalarDriver* base = nullptr;          // null = zero driver
    const ScalarDriver* direction = nullptr;     // heat / reaction-diffusion
    const SphericalDriver* direction_llg = nullptr;
    std::vector<double> eps_schedule;            // strictly decreasing
    SolverConfig solver;
    // Self-convergence mode (no closed limit): the reference is the
    // Richardson extrapolation from the two smallest eps, which are then
    // excluded from the reported cells.
    bool richardson_reference = false;
};

ConvergenceReport clt_experiment(const CltSetup& setup);

// Heat solver with the Ito lift of the driver at scale sqrt(eps): the
// second level gets the -1/2 (t - s) Id correction before dilatation, then
// the standard rough sub-step runs unchanged.
Field ito_solver(const std::vector<double>& u0, int components, const ScalarDriver& driver,
                 double eps, const SolverConfig& cfg);

// Tensor-product driver Gamma = A (x) 1 + 1 (x) B,
// GGamma = AA (x) 1 + A (x) B + 1 (x) BB on R^9, from two spherical drivers.
struct ProductDriver {
    const SphericalDriver* a = nullptr;
    const SphericalDriver* b = nullptr;

    // gamma, ggamma: 81 entries, row-major 9x9, at one node over [t_i, t_j].
    void levels(std::size_t i, std::size_t j, std::size_t node, double* gamma,
                double* ggamma) const;
};

ProductDriver product_gamma(const SphericalDriver& a, const SphericalDriver& b);
double product_chen_defect(const ProductDriver& d, const TripleSampling& sampling = {});

}  // namespace rpde
