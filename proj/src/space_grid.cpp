#include "rpde/space_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rpde {

std::vector<double> make_profile(const SpaceGrid& grid, const std::string& preset, double param) {
    grid.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> g(grid.total());
    auto fill = [&](auto f) {
        if (grid.dim == 1) {
            for (int j = 0; j < grid.n; ++j) g[static_cast<std::size_t>(j)] = f(grid.x(j));
        } else {
            // Profiles vary along the first axis only; index (j1, j2) -> j1 * n + j2.
            for (int j1 = 0; j1 < grid.n; ++j1) {
                const double v = f(grid.x(j1));
                for (int j2 = 0; j2 < grid.n; ++j2)
                    g[static_cast<std::size_t>(j1) * grid.n + j2] = v;
            }
        }
    };
    if (preset == "one")
        fill([](double) { return 1.0; });
    else if (preset == "zero")
        fill([](double) { return 0.0; });
    else if (preset == "sin")
        fill([&](double x) { return std::sin(two_pi * x); });
    else if (preset == "cos")
        fill([&](double x) { return std::cos(two_pi * x); });
    else if (preset == "bump")
        fill([&](double x) { return 1.0 + param * std::sin(two_pi * x); });
    else
        throw std::invalid_argument("make_profile: unknown preset '" + preset + "'");
    return g;
}

std::vector<double> profile_derivative(const SpaceGrid& grid, const std::vector<double>& g) {
    grid.validate();
    if (g.size() != grid.total())
        throw std::invalid_argument("profile_derivative: size mismatch");
    std::vector<double> d(g.size());
    const double inv_2dx = 1.0 / (2.0 * grid.dx());
    if (grid.dim == 1) {
        for (int j = 0; j < grid.n; ++j)
            d[static_cast<std::size_t>(j)] =
                (g[static_cast<std::size_t>(grid.wrap(j + 1))] -
                 g[static_cast<std::size_t>(grid.wrap(j - 1))]) *
                inv_2dx;
    } else {
        for (int j1 = 0; j1 < grid.n; ++j1)
            for (int j2 = 0; j2 < grid.n; ++j2)
                d[static_cast<std::size_t>(j1) * grid.n + j2] =
                    (g[static_cast<std::size_t>(grid.wrap(j1 + 1)) * grid.n + j2] -
                     g[static_cast<std::size_t>(grid.wrap(j1 - 1)) * grid.n + j2]) *
                    inv_2dx;
    }
    return d;
}

}  // namespace rpde
