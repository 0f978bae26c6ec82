#include "rpde/brownian.hpp"

#include <cmath>
#include <stdexcept>

#include "rpde/rng.hpp"

namespace rpde {

PathLift brownian_lift(std::uint64_t seed, const TimeGrid& grid, int refinement, int channels) {
    if (refinement < 1 || (refinement & (refinement - 1)) != 0)
        throw std::invalid_argument("brownian_lift: refinement must be a power of two");
    if (channels < 1) throw std::invalid_argument("brownian_lift: need at least one channel");
    grid.validate();

    const int R = refinement;
    PathLift lift = PathLift::zero(grid, channels, 2.5);
    lift.geometric = true;
    lift.seed = seed;
    lift.refinement = R;

    std::vector<Vec> node(static_cast<std::size_t>(R) + 1, Vec::Zero(channels));
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double width = grid.dt(k);
        // Coarse increment, independent of R.
        Rng coarse(seed, k, 0, 0);
        Vec dw(channels);
        for (int c = 0; c < channels; ++c) dw[c] = std::sqrt(width) * coarse.next_normal();

        node[0].setZero();
        node[static_cast<std::size_t>(R)] = dw;
        // Midpoint displacement keyed by absolute dyadic position so coarser
        // levels are shared between different refinements.
        for (int level = 1, seg = R; seg > 1; ++level, seg /= 2) {
            const double var = width / static_cast<double>(1 << (level + 1));
            const int half = seg / 2;
            for (int a = 0; a + seg <= R; a += seg) {
                Rng mid(seed, k, static_cast<std::uint64_t>(level),
                        static_cast<std::uint64_t>(a / seg) + 1);
                Vec xi(channels);
                for (int c = 0; c < channels; ++c) xi[c] = mid.next_normal();
                node[static_cast<std::size_t>(a + half)] =
                    0.5 * (node[static_cast<std::size_t>(a)] + node[static_cast<std::size_t>(a + seg)]) +
                    std::sqrt(var) * xi;
            }
        }

        // Exact iterated integrals of the piecewise-linear interpolant,
        // accumulated by Chen; coarse grid points are the recorded anchors.
        Vec x = lift.level1[k];
        Mat xx = lift.level2[k];
        for (int m = 0; m < R; ++m) {
            Vec delta = node[static_cast<std::size_t>(m + 1)] - node[static_cast<std::size_t>(m)];
            xx += 0.5 * delta * delta.transpose() + x * delta.transpose();
            x += delta;
        }
        lift.level1[k + 1] = x;
        lift.level2[k + 1] = xx;
    }
    return lift;
}

}  // namespace rpde
