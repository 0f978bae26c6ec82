#pragma once

#include <stdexcept>
#include <vector>

namespace rpde {

// Partition of [0, T] with t_0 = 0 < t_1 < ... < t_n = T.
struct TimeGrid {
    double horizon = 1.0;
    std::vector<double> points;
    bool uniform = false;

    std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
    std::size_t size() const { return points.size(); }
    double dt(std::size_t k) const { return points[k + 1] - points[k]; }

    static TimeGrid make_uniform(double horizon, std::size_t n_steps);
    static TimeGrid from_points(std::vector<double> pts);

    void validate() const;
};

}  // namespace rpde
