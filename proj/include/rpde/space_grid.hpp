#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpde {

// Uniform periodic grid on the unit torus, 1-D or 2-D (tensorized).
struct SpaceGrid {
    int dim = 1;
    int n = 128;  // points per axis

    double dx() const { return 1.0 / static_cast<double>(n); }
    std::size_t total() const {
        return dim == 1 ? static_cast<std::size_t>(n)
                        : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }
    int wrap(int j) const {
        j %= n;
        return j < 0 ? j + n : j;
    }
    double x(int j) const { return static_cast<double>(j) * dx(); }

    void validate() const {
        if (dim != 1 && dim != 2) throw std::invalid_argument("SpaceGrid: dim must be 1 or 2");
        if (n < 4) throw std::invalid_argument("SpaceGrid: need at least 4 points per axis");
    }
};

// Named profile presets used by the experiment harness.
//   "one"        g(x) = 1
//   "zero"       g(x) = 0
//   "sin"        g(x) = sin(2 pi x)   (first axis in 2-D)
//   "cos"        g(x) = cos(2 pi x)
//   "bump"       g(x) = 1 + a sin(2 pi x), parameter a
std::vector<double> make_profile(const SpaceGrid& grid, const std::string& preset,
                                 double param = 0.5);

// Periodic centered first difference of a sampled profile (first axis).
std::vector<double> profile_derivative(const SpaceGrid& grid, const std::vector<double>& g);

}  // namespace rpde
