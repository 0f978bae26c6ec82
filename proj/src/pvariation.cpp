#include "rpde/pvariation.hpp"

#include <cmath>
#include <stdexcept>

namespace rpde {

double two_index_p_variation(const std::function<double(std::size_t, std::size_t)>& magnitude,
                             std::size_t n_points, double p) {
    if (p < 1.0) throw std::domain_error("p_variation: exponent must be >= 1");
    if (n_points < 2) throw std::invalid_argument("p_variation: need at least two points");
    std::vector<double> best(n_points, 0.0);
    for (std::size_t i = 1; i < n_points; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < i; ++j)
            v = std::max(v, best[j] + std::pow(magnitude(j, i), p));
        best[i] = v;
    }
    return std::pow(best[n_points - 1], 1.0 / p);
}

double p_variation(const std::vector<Vec>& samples, double p) {
    return two_index_p_variation(
        [&](std::size_t j, std::size_t i) { return (samples[i] - samples[j]).norm(); },
        samples.size(), p);
}

double two_index_p_variation(const TwoIndexMap& map, double q) {
    return two_index_p_variation(
        [&](std::size_t j, std::size_t i) { return map.at(j, i).lpNorm<Eigen::Infinity>(); },
        map.n, q);
}

double level2_p_variation(const PathLift& lift, double q) {
    return two_index_p_variation(
        [&](std::size_t j, std::size_t i) { return lift.inc2(j, i).lpNorm<Eigen::Infinity>(); },
        lift.points(), q);
}

double control_superadditivity_defect(const std::vector<Vec>& samples, double p) {
    const std::size_t n = samples.size();
    // omega over every subinterval via the same DP, reused from each left endpoint.
    std::vector<std::vector<double>> omega(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::vector<double> best(n, 0.0);
        for (std::size_t i = s + 1; i < n; ++i) {
            double v = 0.0;
            for (std::size_t j = s; j < i; ++j)
                v = std::max(v, best[j] + std::pow((samples[i] - samples[j]).norm(), p));
            best[i] = v;
            omega[s][i] = v;
        }
    }
    double worst = 0.0;
    for (std::size_t s = 0; s + 2 < n; ++s)
        for (std::size_t r = s + 1; r + 1 < n; ++r)
            for (std::size_t t = r + 1; t < n; ++t)
                worst = std::max(worst, omega[s][r] + omega[r][t] - omega[s][t]);
    return worst;
}

}  // namespace rpde
