#pragma once

#include <array>
#include <vector>

#include "rpde/path_lift.hpp"
#include "rpde/space_grid.hpp"

namespace rpde {

// Spatially modulated scalar driver
//   W_{s,t}(x)  = sum_i g_i(x) X^i_{s,t}
//   WW_{s,t}(x) = sum_{i,j} g_i(x) g_j(x) XX^{ij}_{s,t}.
// The driver Chen relation delta WW_{s,r,t}(x) = W_{r,t}(x) W_{s,r}(x) is
// inherited from the lift's Chen relation because scalars commute.
struct ScalarDriver {
    SpaceGrid grid;
    PathLift base;
    std::vector<std::vector<double>> profiles;  // one field per channel
    double chen_defect_recorded = 0.0;

    int channels() const { return base.dim; }
    std::size_t points() const { return base.points(); }

    // Levels over [t_i, t_j] at every node: w, ww sized grid.total().
    void levels(std::size_t i, std::size_t j, std::vector<double>& w,
                std::vector<double>& ww) const;
    void step_levels(std::size_t k, std::vector<double>& w, std::vector<double>& ww) const {
        levels(k, k + 1, w, ww);
    }
};

ScalarDriver make_scalar_driver(const PathLift& lift, const SpaceGrid& grid,
                                std::vector<std::vector<double>> profiles);

// Antisymmetric spherical driver built from a 3-channel modulated lift
// H_{s,t}(x) = (g_1 X^1, g_2 X^2, g_3 X^3), HH^{ij}(x) = g_i g_j XX^{ij}:
//   W(h) v = v x h, entrywise W = [[0, h3, -h2], [-h3, 0, h1], [h2, -h1, 0]]
//   WW_{ij} = HH^{ij} off-diagonal, WW_{ii} = -(sum_{k != i} HH^{kk}),
// which satisfies delta WW = W_{r,t} W_{s,r} whenever HH does Chen.
struct SphericalDriver {
    SpaceGrid grid;
    PathLift base;  // 3 channels
    std::array<std::vector<double>, 3> profiles;
    double chen_defect_recorded = 0.0;

    std::size_t points() const { return base.points(); }

    // h: 3 entries per node; ww: 9 entries per node, row-major 3x3.
    void levels(std::size_t i, std::size_t j, std::vector<double>& h,
                std::vector<double>& ww) const;
    void step_levels(std::size_t k, std::vector<double>& h, std::vector<double>& ww) const {
        levels(k, k + 1, h, ww);
    }
};

SphericalDriver make_llg_driver(const PathLift& h_lift, const SpaceGrid& grid,
                                std::array<std::vector<double>, 3> profiles);

// Antisymmetric 3x3 level-1 matrix of a spherical driver at one node.
void spherical_w_matrix(const double h[3], double w[9]);

// Driver Chen defect: max over sampled triples of the sup-over-x entrywise
// gap |delta WW_{s,r,t}(x) - W_{r,t}(x) W_{s,r}(x)|.
double driver_chen_defect(const ScalarDriver& d, const TripleSampling& sampling = {});
double driver_chen_defect(const SphericalDriver& d, const TripleSampling& sampling = {});

// Metric rho(G, H): p-variation of the sup-over-x level-1 gap plus
// p/2-variation of the sup-over-x level-2 gap, both by the exact DP.
double driver_distance(const ScalarDriver& g, const ScalarDriver& h, double p = 2.5);
double driver_distance(const SphericalDriver& g, const SphericalDriver& h, double p = 2.5);

}  // namespace rpde
