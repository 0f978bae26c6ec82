// Benchmark comparing the OpenMP kernels against the serial reference on
// large frames. Prints one line per kernel: serial time, parallel time,
// speedup, and the max entrywise gap (expected 0 at one thread).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rpde/kernels.hpp"
#include "rpde/rng.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_of(const std::function<void()>& f, int reps) {
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t nx = argc > 1 ? std::stoul(argv[1]) : 1u << 20;
    const int reps = argc > 2 ? std::stoi(argv[2]) : 20;
    std::printf("nodes %zu, %d repetitions per kernel\n", nx, reps);

    rpde::Rng rng(7);
    std::vector<double> u(nx * 3), w(nx), ww(nx), h(nx * 3);
    for (auto& v : u) v = rng.next_normal();
    for (auto& v : w) v = 0.01 * rng.next_normal();
    for (auto& v : ww) v = 1e-4 * rng.next_normal();
    for (auto& v : h) v = 0.01 * rng.next_normal();

    std::vector<double> out_s(nx * 3), out_p(nx * 3);
    std::vector<double> lap(nx * 3), grad(nx * 3);

    auto report = [&](const char* name, double ts, double tp, double gap) {
        std::printf("%-18s serial %.4fs  parallel %.4fs  speedup %.2fx  gap %.3e\n", name, ts,
                    tp, ts / tp, gap);
    };

    {
        auto ts = seconds_of([&] {
            rpde::kernels_serial::apply_scalar_noise(u.data(), w.data(), ww.data(),
                                                     out_s.data(), nx, 3);
        }, reps);
        auto tp = seconds_of([&] {
            rpde::kernels::apply_scalar_noise(u.data(), w.data(), ww.data(), out_p.data(), nx,
                                              3);
        }, reps);
        report("apply_noise", ts, tp, max_gap(out_s, out_p));
    }
    {
        auto ts = seconds_of(
            [&] { rpde::kernels_serial::reaction_cubic(u.data(), out_s.data(), nx, 3); }, reps);
        auto tp = seconds_of(
            [&] { rpde::kernels::reaction_cubic(u.data(), out_p.data(), nx, 3); }, reps);
        report("reaction_cubic", ts, tp, max_gap(out_s, out_p));
    }
    {
        auto ts = seconds_of(
            [&] { rpde::kernels_serial::laplacian_1d(u.data(), out_s.data(), nx, 3, 1.0); },
            reps);
        auto tp = seconds_of(
            [&] { rpde::kernels::laplacian_1d(u.data(), out_p.data(), nx, 3, 1.0); }, reps);
        report("laplacian", ts, tp, max_gap(out_s, out_p));
    }
    {
        rpde::kernels_serial::laplacian_1d(u.data(), lap.data(), nx, 3, 1.0);
        rpde::kernels_serial::gradient_1d(u.data(), grad.data(), nx, 3, 1.0);
        auto ts = seconds_of(
            [&] {
                rpde::kernels_serial::llg_gamma(u.data(), lap.data(), grad.data(), out_s.data(),
                                                nx);
            },
            reps);
        auto tp = seconds_of(
            [&] { rpde::kernels::llg_gamma(u.data(), lap.data(), grad.data(), out_p.data(), nx); },
            reps);
        report("llg_gamma", ts, tp, max_gap(out_s, out_p));
    }
    {
        out_s = u;
        out_p = u;
        auto ts =
            seconds_of([&] { rpde::kernels_serial::rotate_exact(out_s.data(), h.data(), nx); },
                       reps);
        auto tp = seconds_of([&] { rpde::kernels::rotate_exact(out_p.data(), h.data(), nx); },
                             reps);
        report("rotate_exact", ts, tp, max_gap(out_s, out_p));
    }
    return 0;
}
