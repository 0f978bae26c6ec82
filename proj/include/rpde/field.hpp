#pragma once

#include <cstddef>
#include <vector>

#include "rpde/space_grid.hpp"
#include "rpde/time_grid.hpp"

namespace rpde {

// Space-time solution record u(t_k, x_j) in R^n on a periodic grid.
// Storage is flat, node-major inside each time frame:
//   data[(k * grid.total() + j) * components + c].
struct Field {
    SpaceGrid grid;
    TimeGrid times;
    int components = 1;
    std::vector<double> data;

    std::size_t frame_size() const { return grid.total() * static_cast<std::size_t>(components); }
    double* frame(std::size_t k) { return data.data() + k * frame_size(); }
    const double* frame(std::size_t k) const { return data.data() + k * frame_size(); }
    double& at(std::size_t k, std::size_t j, int c) {
        return data[(k * grid.total() + j) * components + c];
    }
    double at(std::size_t k, std::size_t j, int c) const {
        return data[(k * grid.total() + j) * components + c];
    }

    void validate() const;

    static Field zero(const SpaceGrid& grid, const TimeGrid& times, int components);
};

// Discrete norms of a single frame; integrals carry the dx (dx^2 in 2-D)
// volume element, derivatives are periodic centered differences and the
// second difference for the Laplacian.
double frame_l2(const SpaceGrid& grid, const double* u, int components);
double frame_h1_sq(const SpaceGrid& grid, const double* u, int components);  // |u|^2 + |grad u|^2
double frame_h2_sq(const SpaceGrid& grid, const double* u, int components);  // h1 + |lap u|^2

// Norms of the solution space L^inf(H^1), L^2(H^2), V^p(L^2):
//   linf_l2  = max_k |u(t_k)|_{L2}
//   linf_h1  = max_k |u(t_k)|_{H1}
//   l2_h2    = (trapezoid-in-time integral of |u(t)|^2_{H2})^{1/2}
//   pvar_l2  = p-variation of t -> u(t) with increments measured in L^2.
struct FieldNorms {
    double linf_l2 = 0.0;
    double linf_h1 = 0.0;
    double l2_h2 = 0.0;
    double pvar_l2 = 0.0;
};
FieldNorms discrete_norms(const Field& f, double p = 2.5);

// Squared-energy functional of the solution space:
// sup_t |f|^2_{H1} + integral |f|^2_{H2}.
double squared_energy(const FieldNorms& n);

Field field_difference(const Field& a, const Field& b);
double linf_l2_gap(const Field& a, const Field& b);

// Energy-inequality record: energy(u) <= C |u0|^2_{H1} with the attained C
// recorded; no fixed constant is asserted. h1_sq_per_time supports the
// zero-driver monotonicity check.
struct EnergyReport {
    double energy_sq = 0.0;
    double u0_h1_sq = 0.0;
    double constant = 0.0;  // energy_sq / u0_h1_sq (inf when u0 = 0 and energy > 0)
    std::vector<double> h1_sq_per_time;

    bool nonincreasing(double tol = 1e-12) const;
};
EnergyReport energy_report(const Field& f, const std::vector<double>& u0);

}  // namespace rpde
