#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rpde/time_grid.hpp"

namespace rpde {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Discrete two-level rough path, stored anchored at time 0:
//   level1[i] = X_{0,t_i},  level2[i] = XX_{0,t_i}.
// Any block is reconstructed through Chen's relation,
//   X_{s,t}  = X_{0,t} - X_{0,s}
//   XX_{s,t} = XX_{0,t} - XX_{0,s} - X_{0,s} (x) X_{s,t},
// which makes the Chen defect of reconstructed blocks vanish identically.
struct PathLift {
    int dim = 0;
    TimeGrid grid;
    std::vector<Vec> level1;
    std::vector<Mat> level2;
    double pvar_exponent = 2.5;  // metadata, declared by the constructor, never estimated
    bool geometric = false;
    std::uint64_t seed = 0;      // records how a sampled lift was drawn
    int refinement = 1;

    std::size_t points() const { return level1.size(); }

    Vec inc1(std::size_t i, std::size_t j) const { return level1[j] - level1[i]; }
    Mat inc2(std::size_t i, std::size_t j) const {
        return level2[j] - level2[i] - level1[i] * (level1[j] - level1[i]).transpose();
    }

    void validate() const;

    static PathLift zero(const TimeGrid& grid, int dim, double p = 2.5);
    // Lift of point samples x_i in R^d via trapezoid iterated integrals of the
    // piecewise-linear interpolant (geometric by construction).
    static PathLift from_samples(const TimeGrid& grid, const std::vector<Vec>& samples,
                                 double p = 2.5);
};

// Dense two-index map A_{t_i,t_j} for i <= j. Used where anchored storage
// cannot represent the data (e.g. deliberately corrupted second levels).
struct TwoIndexMap {
    std::size_t n = 0;  // grid points
    int rows = 0, cols = 0;
    std::vector<Mat> blocks;  // upper-triangular, index (i,j) with i <= j

    TwoIndexMap() = default;
    TwoIndexMap(std::size_t n_points, int r, int c);

    Mat& at(std::size_t i, std::size_t j);
    const Mat& at(std::size_t i, std::size_t j) const;

    static TwoIndexMap level2_of(const PathLift& lift);
};

struct TripleSampling {
    // Exhaustive scan for small grids, uniform sampling above the cutoff.
    std::size_t exhaustive_cutoff = 256;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

// max over triples s<r<t of |delta XX_{s,r,t} - X_{s,r} (x) X_{r,t}| (entrywise).
double chen_defect(const PathLift& lift, const TripleSampling& sampling = {});
// Same defect on an explicit dense second level paired with anchored level-1 data.
double chen_defect(const std::vector<Vec>& level1_anchored, const TwoIndexMap& level2,
                   const TripleSampling& sampling = {});

// max over grid pairs of |Sym(XX_{s,t}) - 1/2 X_{s,t} (x) X_{s,t}|.
double geometricity_defect(const PathLift& lift);

// (eps X, eps^2 XX); preserves the geometric tag.
PathLift dilate(const PathLift& lift, double eps);

// Second level of the Ito lift of Brownian motion: XX - 1/2 (t-s) Id.
PathLift ito_corrected(const PathLift& lift);

}  // namespace rpde
