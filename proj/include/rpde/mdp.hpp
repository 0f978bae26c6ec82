#pragma once

#include <cstdint>
#include <vector>

#include "rpde/brownian.hpp"
#include "rpde/tangent.hpp"

namespace rpde {

// Finite-energy direction stored by its derivative samples; values follow
// by trapezoid integration with h_0 = 0, so energy and lift never
// differentiate numerically.
struct CameronMartinPath {
    TimeGrid grid;
    std::vector<Vec> hdot;  // one sample per grid point

    int dim() const { return hdot.empty() ? 0 : static_cast<int>(hdot.front().size()); }
    std::vector<Vec> values() const;  // trapezoid antiderivative

    void validate() const;
};

// 1/2 integral |hdot|^2 (trapezoid). The flag switches the integrand to the
// path values |h|^2 for comparison runs; the derivative form is the default.
double cm_energy(const CameronMartinPath& h, bool integrand_is_value = false);

// Young lift (delta h, int delta h (x) hdot), realized as the exact iterated
// integrals of the piecewise-linear interpolant of the trapezoid values:
// geometric and Chen-exact by construction.
PathLift lift_cm(const CameronMartinPath& h);

// Skeleton equation: the tangent equation at G = 0 driven by the lift of h.
// Same code path as solve_tangent by contract.
Field solve_skeleton(const CameronMartinPath& h, const Field& base_solution,
                     const ScalarDriver& direction_template, Equation equation,
                     const SolverConfig& cfg);

// One admissible pair (X^h, E(h)); E(h) is an upper-bound certificate for
// the rate at X^h, the infimum over preimages is not computed.
struct RatePoint {
    Field image;
    double energy = 0.0;
};
RatePoint rate_point(const CameronMartinPath& h, const Field& base_solution,
                     const ScalarDriver& direction_template, Equation equation,
                     const SolverConfig& cfg);

// lambda(eps) = eps^{-a}; admissible iff lambda -> infinity and
// sqrt(eps) lambda -> 0, checked structurally (a in (0, 1/2)) and
// numerically on the experiment's grid.
struct LambdaSchedule {
    double exponent = 0.25;

    double lambda(double eps) const;
    bool valid(const std::vector<double>& eps_grid) const;
};

// Monte Carlo exponential-equivalence diagnostic: the tail statistic
// lambda^{-2} log P(|X^eps - X|_Y / lambda > delta) per cell, Brownian
// samples seeded (seed, cell, sample). Zero-count cells carry the
// below-resolution sentinel -log(M) / lambda^2.
struct McConfig {
    std::vector<double> eps_grid;  // strictly decreasing
    LambdaSchedule schedule;
    double delta = 0.1;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    int refinement = 1;

    Equation equation = Equation::Heat;
    std::vector<double> u0;
    int components = 1;
    SpaceGrid grid;
    TimeGrid times;
    std::vector<std::vector<double>> profiles;  // channel count = lift dimension
    SolverConfig solver;
};

struct ExpEquivCell {
    double eps = 0.0;
    double lambda = 0.0;
    double p_hat = 0.0;
    double statistic = 0.0;
    bool sentinel = false;
};

std::vector<ExpEquivCell> exp_equivalence_mc(const McConfig& cfg);

// Trend check over non-sentinel cells (sentinels mean "below Monte Carlo
// resolution" and carry no ordering information).
bool exp_equivalence_trend_nonincreasing(const std::vector<ExpEquivCell>& cells,
                                         double tol = 1e-12);

}  // namespace rpde
