#include "rpde/time_grid.hpp"

#include <cmath>

namespace rpde {

TimeGrid TimeGrid::make_uniform(double horizon, std::size_t n_steps) {
    if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    if (n_steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
    TimeGrid g;
    g.horizon = horizon;
    g.uniform = true;
    g.points.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        g.points[i] = horizon * static_cast<double>(i) / static_cast<double>(n_steps);
    g.points.back() = horizon;
    return g;
}

TimeGrid TimeGrid::from_points(std::vector<double> pts) {
    TimeGrid g;
    g.points = std::move(pts);
    g.uniform = false;
    if (g.points.size() < 2) throw std::invalid_argument("TimeGrid: need at least two points");
    g.horizon = g.points.back();
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (points.size() < 2) throw std::invalid_argument("TimeGrid: need at least two points");
    if (points.front() != 0.0) throw std::invalid_argument("TimeGrid: t_0 must be 0");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("TimeGrid: points must be strictly increasing");
    if (!std::isfinite(horizon) || points.back() != horizon)
        throw std::invalid_argument("TimeGrid: t_n must equal the horizon");
}

}  // namespace rpde
