#pragma once

#include "rpde/path_lift.hpp"

namespace rpde {

// Crossed integral [AB]_{s,t} = int_s^t A_{s,r} (x) dB_r, trapezoid sums.
// Anchored storage: anchor[i] = int_0^{t_i} A_{0,r} (x) dB_r, so that
//   [AB]_{s,t} = anchor[t] - anchor[s] - A_{0,s} (x) B_{s,t}
// and the additivity delta[AB]_{s,r,t} = A_{s,r} (x) B_{r,t} is exact at
// grid level. Trapezoid (not left-point) sums keep the discrete integration
// by parts [AB] + [BA]^T = A (x) B exact, matching geometric calculus.
struct CrossMap {
    TimeGrid grid;
    std::vector<Vec> a0;      // A_{0,t_i}
    std::vector<Vec> b0;      // B_{0,t_i}
    std::vector<Mat> anchor;

    Mat block(std::size_t i, std::size_t j) const {
        return anchor[j] - anchor[i] - a0[i] * (b0[j] - b0[i]).transpose();
    }
    std::size_t points() const { return anchor.size(); }

    static CrossMap zero(const TimeGrid& grid, int da, int db);
};

// Regularity exponents of A and B are the caller's declaration (1/qa + 1/qb > 1
// for a genuine Young pairing); they are metadata and do not enter the sums.
CrossMap young_cross(const TimeGrid& grid, const std::vector<Vec>& a, const std::vector<Vec>& b);
CrossMap young_cross(const PathLift& a, const PathLift& b);

// {X + Y} = (X + Y, XX + YY + [XY] + [YX]).
PathLift sum_lifts(const PathLift& x, const PathLift& y, const CrossMap& xy, const CrossMap& yx);

// The increment {X + tau_eps Y} - X = (eps Y, eps^2 YY + eps[XY] + eps[YX]).
// Element-wise difference; deliberately NOT a rough path (fails Chen).
struct Increment {
    const PathLift* y;
    const CrossMap* xy;
    const CrossMap* yx;
    double eps;

    Vec level1(std::size_t i, std::size_t j) const { return eps * y->inc1(i, j); }
    Mat level2(std::size_t i, std::size_t j) const {
        return eps * eps * y->inc2(i, j) + eps * (xy->block(i, j) + yx->block(i, j));
    }
};
Increment increment(const PathLift& x, const PathLift& y, const CrossMap& xy, const CrossMap& yx,
                    double eps);

// Joint lift Z = (V, h) on R^{2d} with second level blocks
//   [ VV   [Vh] ]
//   [ [hV] [hh] ],  crossed blocks via trapezoid Young sums.
PathLift joint_lift_young(const PathLift& v, const std::vector<Vec>& h, double q_of_h = 1.0);

}  // namespace rpde
