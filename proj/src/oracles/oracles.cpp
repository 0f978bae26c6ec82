#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oracles {

double pvar_bruteforce(const std::vector<std::vector<double>>& samples, double p) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("pvar_bruteforce: need at least 2 points");
    if (n > 14) throw std::invalid_argument("pvar_bruteforce: refuses more than 14 points");
    if (p < 1.0) throw std::invalid_argument("pvar_bruteforce: p must be at least 1");

    auto inc = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t c = 0; c < samples[i].size(); ++c) {
            const double d = samples[j][c] - samples[i][c];
            s += d * d;
        }
        return std::sqrt(s);
    };

    const std::size_t interior = n - 2;
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << interior); ++mask) {
        double total = 0.0;
        std::size_t prev = 0;
        for (std::size_t k = 0; k < interior; ++k) {
            if (mask & (std::size_t{1} << k)) {
                total += std::pow(inc(prev, k + 1), p);
                prev = k + 1;
            }
        }
        total += std::pow(inc(prev, n - 1), p);
        best = std::max(best, total);
    }
    return std::pow(best, 1.0 / p);
}

std::vector<double> commuting_heat_exact(const std::vector<double>& u0, double c, double x_0t,
                                         double t, Calculus mode) {
    const std::size_t n = u0.size();
    if (n == 0) throw std::invalid_argument("commuting_heat_exact: empty initial data");
    const double two_pi = 2.0 * std::numbers::pi;

    // Naive DFT, exact heat decay per mode, inverse DFT.
    std::vector<std::complex<double>> coef(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += u0[j] * std::exp(std::complex<double>(
                             0.0, -two_pi * static_cast<double>(j) * static_cast<double>(k) /
                                      static_cast<double>(n)));
        coef[k] = s / static_cast<double>(n);
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double freq = k <= n / 2 ? static_cast<double>(k)
                                           : static_cast<double>(k) - static_cast<double>(n);
            const double decay = std::exp(-two_pi * two_pi * freq * freq * t);
            s += coef[k] * decay *
                 std::exp(std::complex<double>(
                     0.0, two_pi * static_cast<double>(j) * static_cast<double>(k) /
                              static_cast<double>(n)));
        }
        out[j] = s.real();
    }

    double amp = std::exp(c * x_0t);
    if (mode == Calculus::Ito) amp = std::exp(c * x_0t - 0.5 * c * c * t);
    for (double& v : out) v *= amp;
    return out;
}

double ode_reference_cubic(double y0, double horizon, double step) {
    auto f = [](double y) { return y * (1.0 - y * y); };
    double y = y0;
    double t = 0.0;
    while (t < horizon) {
        const double h = std::min(step, horizon - t);
        const double k1 = f(y);
        const double k2 = f(y + 0.5 * h * k1);
        const double k3 = f(y + 0.5 * h * k2);
        const double k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return y;
}

double young_trapezoid_dense(const std::function<double(double)>& a,
                             const std::function<double(double)>& b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("young_trapezoid_dense: need at least 2 points");
    double total = 0.0;
    double tk = 0.0, ak = a(0.0), bk = b(0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk1 = static_cast<double>(k) / static_cast<double>(n - 1);
        const double ak1 = a(tk1), bk1 = b(tk1);
        total += 0.5 * (ak + ak1) * (bk1 - bk);
        tk = tk1;
        ak = ak1;
        bk = bk1;
    }
    (void)tk;
    return total;
}

}  // namespace oracles
