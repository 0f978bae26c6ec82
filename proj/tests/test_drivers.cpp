#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rpde/brownian.hpp"
#include "rpde/drivers.hpp"
#include "rpde/pvariation.hpp"
#include "rpde/rng.hpp"

using namespace rpde;

namespace {

PathLift smooth_lift(std::size_t steps, int dim, double freq = 1.0) {
    TimeGrid grid = TimeGrid::make_uniform(1.0, steps);
    std::vector<Vec> samples(grid.size(), Vec::Zero(dim));
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (int c = 0; c < dim; ++c)
            samples[i][c] = std::sin(freq * (c + 1) * grid.points[i] + 0.2 * c);
    return PathLift::from_samples(grid, samples);
}

}  // namespace

TEST_CASE("scalar driver levels for flat and zero profiles") {
    SpaceGrid sg{1, 16};
    PathLift lift = smooth_lift(32, 1);

    ScalarDriver zero = make_scalar_driver(lift, sg, {make_profile(sg, "zero")});
    std::vector<double> w, ww;
    zero.levels(3, 20, w, ww);
    for (double v : w) CHECK(v == 0.0);
    for (double v : ww) CHECK(v == 0.0);

    ScalarDriver one = make_scalar_driver(lift, sg, {make_profile(sg, "one")});
    one.levels(3, 20, w, ww);
    for (double v : w) CHECK(v == doctest::Approx(lift.inc1(3, 20)[0]).epsilon(1e-14));
    for (double v : ww) CHECK(v == doctest::Approx(lift.inc2(3, 20)(0, 0)).epsilon(1e-14));
}

TEST_CASE("scalar driver modulation by a profile") {
    SpaceGrid sg{1, 64};
    PathLift lift = smooth_lift(16, 1);
    auto g = make_profile(sg, "sin");
    ScalarDriver d = make_scalar_driver(lift, sg, {g});
    std::vector<double> w, ww;
    d.levels(2, 10, w, ww);
    for (std::size_t j = 0; j < sg.total(); ++j) {
        CHECK(w[j] == doctest::Approx(g[j] * lift.inc1(2, 10)[0]).epsilon(1e-14));
        CHECK(ww[j] == doctest::Approx(g[j] * g[j] * lift.inc2(2, 10)(0, 0)).epsilon(1e-14));
    }
    std::vector<double> ws, wws;
    d.step_levels(2, ws, wws);
    std::vector<double> wl, wwl;
    d.levels(2, 3, wl, wwl);
    CHECK(ws == wl);
    CHECK(wws == wwl);
}

TEST_CASE("scalar driver multi-channel sum") {
    SpaceGrid sg{1, 8};
    PathLift lift = smooth_lift(16, 2);
    auto g1 = make_profile(sg, "sin");
    auto g2 = make_profile(sg, "cos");
    ScalarDriver d = make_scalar_driver(lift, sg, {g1, g2});
    std::vector<double> w, ww;
    d.levels(1, 12, w, ww);
    const Vec x = lift.inc1(1, 12);
    const Mat xx = lift.inc2(1, 12);
    for (std::size_t j = 0; j < sg.total(); ++j) {
        CHECK(w[j] == doctest::Approx(g1[j] * x[0] + g2[j] * x[1]).epsilon(1e-13));
        double s = 0.0;
        const double g[2] = {g1[j], g2[j]};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += g[a] * g[b] * xx(a, b);
        CHECK(ww[j] == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("driver chen defect is inherited from the lift") {
    SpaceGrid sg{1, 32};
    ScalarDriver d = make_scalar_driver(smooth_lift(256, 2), sg,
                                        {make_profile(sg, "sin"), make_profile(sg, "bump", 0.3)});
    CHECK(d.chen_defect_recorded <= 1e-10);
    CHECK(driver_chen_defect(d) <= 1e-10);

    ScalarDriver b = make_scalar_driver(brownian_lift(5, TimeGrid::make_uniform(1.0, 256), 4, 2),
                                        sg, {make_profile(sg, "sin"), make_profile(sg, "one")});
    CHECK(driver_chen_defect(b) <= 1e-10);
}

TEST_CASE("spherical level-1 matrix") {
    double h[3] = {0.3, -1.1, 0.7};
    double w[9];
    spherical_w_matrix(h, w);
    // W v = v x h.
    Eigen::Matrix3d W;
    W << w[0], w[1], w[2], w[3], w[4], w[5], w[6], w[7], w[8];
    CHECK((W + W.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    Eigen::Vector3d v(1.0, 2.0, -0.5), hh(h[0], h[1], h[2]);
    CHECK((W * v - v.cross(hh)).lpNorm<Eigen::Infinity>() <= 1e-15);
    // h along e3 fixes e3.
    double hz[3] = {0.0, 0.0, 2.0}, wz[9];
    spherical_w_matrix(hz, wz);
    CHECK(wz[2] == 0.0);
    CHECK(wz[5] == 0.0);
    CHECK(wz[8] == 0.0);
    CHECK(wz[1] == doctest::Approx(2.0));
}

TEST_CASE("spherical driver levels and second-level trace structure") {
    SpaceGrid sg{1, 16};
    PathLift lift = smooth_lift(64, 3);
    std::array<std::vector<double>, 3> profiles = {
        make_profile(sg, "one"), make_profile(sg, "sin"), make_profile(sg, "cos")};
    SphericalDriver d = make_llg_driver(lift, sg, profiles);

    std::vector<double> h, ww;
    d.levels(2, 40, h, ww);
    const Vec x = lift.inc1(2, 40);
    const Mat xx = lift.inc2(2, 40);
    for (std::size_t j = 0; j < sg.total(); ++j) {
        const double g[3] = {profiles[0][j], profiles[1][j], profiles[2][j]};
        for (int a = 0; a < 3; ++a)
            CHECK(h[3 * j + a] == doctest::Approx(g[a] * x[a]).epsilon(1e-13));
        double hh[9];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) hh[3 * a + b] = g[a] * g[b] * xx(a, b);
        const double* blk = ww.data() + 9 * j;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a != b)
                    CHECK(blk[3 * a + b] == doctest::Approx(hh[3 * a + b]).epsilon(1e-13));
            }
        CHECK(blk[0] == doctest::Approx(-(hh[4] + hh[8])).epsilon(1e-13));
        CHECK(blk[4] == doctest::Approx(-(hh[0] + hh[8])).epsilon(1e-13));
        CHECK(blk[8] == doctest::Approx(-(hh[0] + hh[4])).epsilon(1e-13));
    }
    CHECK(driver_chen_defect(d) <= 1e-10);
}

TEST_CASE("spherical driver with a zero lift") {
    SpaceGrid sg{1, 8};
    PathLift zero = PathLift::zero(TimeGrid::make_uniform(1.0, 8), 3);
    SphericalDriver d = make_llg_driver(
        zero, sg, {make_profile(sg, "one"), make_profile(sg, "one"), make_profile(sg, "one")});
    std::vector<double> h, ww;
    d.levels(0, 8, h, ww);
    for (double v : h) CHECK(v == 0.0);
    for (double v : ww) CHECK(v == 0.0);
}

TEST_CASE("driver distance: identity, decomposition, dilatation") {
    SpaceGrid sg{1, 16};
    PathLift lift = smooth_lift(40, 1);
    ScalarDriver g = make_scalar_driver(lift, sg, {make_profile(sg, "one")});
    CHECK(driver_distance(g, g) == 0.0);

    // Against the zero driver with a flat profile, the sup over x drops out
    // and the metric is exactly the p-var of X plus the p/2-var of XX.
    ScalarDriver z = make_scalar_driver(PathLift::zero(lift.grid, 1), sg,
                                        {make_profile(sg, "one")});
    const double p = 2.5;
    const double expected = p_variation(lift.level1, p) + level2_p_variation(lift, p / 2.0);
    CHECK(driver_distance(g, z, p) == doctest::Approx(expected).epsilon(1e-12));

    // rho(tau_eps G, G) scales continuously: halving eps from 1 shrinks it.
    ScalarDriver gh = make_scalar_driver(dilate(lift, 0.5), sg, {make_profile(sg, "one")});
    ScalarDriver gq = make_scalar_driver(dilate(lift, 0.75), sg, {make_profile(sg, "one")});
    CHECK(driver_distance(g, gq, p) < driver_distance(g, gh, p));
}

TEST_CASE("driver distance triangle inequality") {
    SpaceGrid sg{1, 12};
    TimeGrid tg = TimeGrid::make_uniform(1.0, 24);
    Rng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        auto random_driver = [&] {
            std::vector<Vec> s(tg.size(), Vec::Zero(2));
            for (std::size_t i = 1; i < tg.size(); ++i)
                for (int c = 0; c < 2; ++c) s[i][c] = s[i - 1][c] + 0.2 * rng.next_normal();
            std::vector<double> prof(sg.total());
            for (auto& v : prof) v = rng.next_uniform();
            return make_scalar_driver(PathLift::from_samples(tg, s), sg,
                                      {prof, make_profile(sg, "one")});
        };
        ScalarDriver a = random_driver(), b = random_driver(), c = random_driver();
        const double ab = driver_distance(a, b), bc = driver_distance(b, c),
                     ac = driver_distance(a, c);
        CHECK(ac <= ab + bc + 1e-10);
    }
}
