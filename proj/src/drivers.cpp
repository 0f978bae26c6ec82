#include "rpde/drivers.hpp"

#include <cmath>
#include <stdexcept>

#include "rpde/pvariation.hpp"
#include "rpde/rng.hpp"

namespace rpde {

namespace {

void check_profiles(const SpaceGrid& grid, const std::vector<std::vector<double>>& profiles) {
    grid.validate();
    for (const auto& g : profiles) {
        if (g.size() != grid.total())
            throw std::invalid_argument("driver: profile size does not match the space grid");
        for (double v : g)
            if (!std::isfinite(v)) throw std::invalid_argument("driver: non-finite profile entry");
    }
}

template <typename Eval>
double sampled_triple_max(std::size_t n, Eval eval, const TripleSampling& sampling) {
    if (n < 3) return 0.0;
    double worst = 0.0;
    if (n <= sampling.exhaustive_cutoff) {
        for (std::size_t s = 0; s + 2 < n; ++s)
            for (std::size_t r = s + 1; r + 1 < n; ++r)
                for (std::size_t t = r + 1; t < n; ++t) worst = std::max(worst, eval(s, r, t));
    } else {
        Rng rng(sampling.seed, 0x6472636eull);  // driver-triple stream
        for (std::size_t k = 0; k < sampling.samples; ++k) {
            std::size_t s = rng.next_u64() % (n - 2);
            std::size_t r = s + 1 + rng.next_u64() % (n - s - 2);
            std::size_t t = r + 1 + rng.next_u64() % (n - r - 1);
            worst = std::max(worst, eval(s, r, t));
        }
    }
    return worst;
}

}  // namespace

void ScalarDriver::levels(std::size_t i, std::size_t j, std::vector<double>& w,
                          std::vector<double>& ww) const {
    const std::size_t nx = grid.total();
    const int m = channels();
    w.assign(nx, 0.0);
    ww.assign(nx, 0.0);
    const Vec x = base.inc1(i, j);
    const Mat xx = base.inc2(i, j);
    for (std::size_t node = 0; node < nx; ++node) {
        double lin = 0.0, quad = 0.0;
        for (int a = 0; a < m; ++a) {
            const double ga = profiles[static_cast<std::size_t>(a)][node];
            lin += ga * x[a];
            for (int b = 0; b < m; ++b)
                quad += ga * profiles[static_cast<std::size_t>(b)][node] * xx(a, b);
        }
        w[node] = lin;
        ww[node] = quad;
    }
}

ScalarDriver make_scalar_driver(const PathLift& lift, const SpaceGrid& grid,
                                std::vector<std::vector<double>> profiles) {
    lift.validate();
    check_profiles(grid, profiles);
    if (static_cast<int>(profiles.size()) != lift.dim)
        throw std::invalid_argument("make_scalar_driver: one profile per channel required");
    ScalarDriver d;
    d.grid = grid;
    d.base = lift;
    d.profiles = std::move(profiles);
    d.chen_defect_recorded = driver_chen_defect(d);
    return d;
}

void SphericalDriver::levels(std::size_t i, std::size_t j, std::vector<double>& h,
                             std::vector<double>& ww) const {
    const std::size_t nx = grid.total();
    h.assign(nx * 3, 0.0);
    ww.assign(nx * 9, 0.0);
    const Vec x = base.inc1(i, j);
    const Mat xx = base.inc2(i, j);
    for (std::size_t node = 0; node < nx; ++node) {
        double g[3] = {profiles[0][node], profiles[1][node], profiles[2][node]};
        for (int a = 0; a < 3; ++a) h[node * 3 + a] = g[a] * x[a];
        // HH^{ab} = g_a g_b XX^{ab}; WW off-diagonal is HH, the diagonal
        // carries minus the two complementary HH diagonal entries.
        double hh[9];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) hh[a * 3 + b] = g[a] * g[b] * xx(a, b);
        double* m = ww.data() + node * 9;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m[a * 3 + b] = (a == b) ? 0.0 : hh[a * 3 + b];
        m[0] = -(hh[4] + hh[8]);
        m[4] = -(hh[0] + hh[8]);
        m[8] = -(hh[0] + hh[4]);
    }
}

SphericalDriver make_llg_driver(const PathLift& h_lift, const SpaceGrid& grid,
                                std::array<std::vector<double>, 3> profiles) {
    h_lift.validate();
    if (h_lift.dim != 3)
        throw std::invalid_argument("make_llg_driver: lift must have exactly 3 channels");
    check_profiles(grid, {profiles[0], profiles[1], profiles[2]});
    SphericalDriver d;
    d.grid = grid;
    d.base = h_lift;
    d.profiles = std::move(profiles);
    d.chen_defect_recorded = driver_chen_defect(d);
    return d;
}

void spherical_w_matrix(const double h[3], double w[9]) {
    w[0] = 0.0;
    w[1] = h[2];
    w[2] = -h[1];
    w[3] = -h[2];
    w[4] = 0.0;
    w[5] = h[0];
    w[6] = h[1];
    w[7] = -h[0];
    w[8] = 0.0;
}

double driver_chen_defect(const ScalarDriver& d, const TripleSampling& sampling) {
    const std::size_t nx = d.grid.total();
    std::vector<double> wsr, wwsr, wrt, wwrt, wst, wwst;
    auto eval = [&](std::size_t s, std::size_t r, std::size_t t) {
        d.levels(s, r, wsr, wwsr);
        d.levels(r, t, wrt, wwrt);
        d.levels(s, t, wst, wwst);
        double worst = 0.0;
        for (std::size_t node = 0; node < nx; ++node)
            worst = std::max(worst, std::fabs(wwst[node] - wwsr[node] - wwrt[node] -
                                              wrt[node] * wsr[node]));
        return worst;
    };
    return sampled_triple_max(d.points(), eval, sampling);
}

double driver_chen_defect(const SphericalDriver& d, const TripleSampling& sampling) {
    const std::size_t nx = d.grid.total();
    std::vector<double> hsr, wwsr, hrt, wwrt, hst, wwst;
    auto eval = [&](std::size_t s, std::size_t r, std::size_t t) {
        d.levels(s, r, hsr, wwsr);
        d.levels(r, t, hrt, wwrt);
        d.levels(s, t, hst, wwst);
        double worst = 0.0;
        for (std::size_t node = 0; node < nx; ++node) {
            double wsr[9], wrt[9];
            spherical_w_matrix(hsr.data() + node * 3, wsr);
            spherical_w_matrix(hrt.data() + node * 3, wrt);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    double prod = 0.0;
                    for (int c = 0; c < 3; ++c) prod += wrt[a * 3 + c] * wsr[c * 3 + b];
                    const double defect = wwst[node * 9 + a * 3 + b] -
                                          wwsr[node * 9 + a * 3 + b] -
                                          wwrt[node * 9 + a * 3 + b] - prod;
                    worst = std::max(worst, std::fabs(defect));
                }
        }
        return worst;
    };
    return sampled_triple_max(d.points(), eval, sampling);
}

namespace {

template <typename Levels>
double distance_impl(std::size_t n, std::size_t nx, int lvl1_len, int lvl2_len, Levels levels_gap,
                     double p) {
    // levels_gap(i, j, w, ww) fills sup-relevant per-node gaps; the metric
    // takes the sup over x of the entrywise magnitudes per level.
    std::vector<double> w, ww;
    auto gap1 = [&](std::size_t i, std::size_t j) {
        levels_gap(i, j, w, ww);
        double worst = 0.0;
        for (std::size_t m = 0; m < nx * static_cast<std::size_t>(lvl1_len); ++m)
            worst = std::max(worst, std::fabs(w[m]));
        return worst;
    };
    auto gap2 = [&](std::size_t i, std::size_t j) {
        levels_gap(i, j, w, ww);
        double worst = 0.0;
        for (std::size_t m = 0; m < nx * static_cast<std::size_t>(lvl2_len); ++m)
            worst = std::max(worst, std::fabs(ww[m]));
        return worst;
    };
    return two_index_p_variation(gap1, n, p) + two_index_p_variation(gap2, n, p / 2.0);
}

}  // namespace

double driver_distance(const ScalarDriver& g, const ScalarDriver& h, double p) {
    if (g.points() != h.points() || g.grid.total() != h.grid.total())
        throw std::invalid_argument("driver_distance: grid mismatch");
    const std::size_t nx = g.grid.total();
    std::vector<double> wh, wwh;
    auto gap = [&](std::size_t i, std::size_t j, std::vector<double>& w, std::vector<double>& ww) {
        g.levels(i, j, w, ww);
        h.levels(i, j, wh, wwh);
        for (std::size_t m = 0; m < w.size(); ++m) w[m] -= wh[m];
        for (std::size_t m = 0; m < ww.size(); ++m) ww[m] -= wwh[m];
    };
    return distance_impl(g.points(), nx, 1, 1, gap, p);
}

double driver_distance(const SphericalDriver& g, const SphericalDriver& h, double p) {
    if (g.points() != h.points() || g.grid.total() != h.grid.total())
        throw std::invalid_argument("driver_distance: grid mismatch");
    const std::size_t nx = g.grid.total();
    std::vector<double> hh, wwh;
    auto gap = [&](std::size_t i, std::size_t j, std::vector<double>& w, std::vector<double>& ww) {
        g.levels(i, j, w, ww);
        h.levels(i, j, hh, wwh);
        for (std::size_t m = 0; m < w.size(); ++m) w[m] -= hh[m];
        for (std::size_t m = 0; m < ww.size(); ++m) ww[m] -= wwh[m];
    };
    return distance_impl(g.points(), nx, 3, 9, gap, p);
}

}  // namespace rpde
