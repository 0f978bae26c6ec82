#include "rpde/field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpde/kernels.hpp"
#include "rpde/pvariation.hpp"

namespace rpde {

void Field::validate() const {
    grid.validate();
    times.validate();
    if (components < 1) throw std::invalid_argument("Field: components must be positive");
    if (data.size() != times.size() * frame_size())
        throw std::invalid_argument("Field: data size does not match grids");
    for (double v : data)
        if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite entry");
}

Field Field::zero(const SpaceGrid& grid, const TimeGrid& times, int components) {
    Field f;
    f.grid = grid;
    f.times = times;
    f.components = components;
    f.data.assign(times.size() * f.frame_size(), 0.0);
    return f;
}

namespace {

double volume_element(const SpaceGrid& grid) {
    return grid.dim == 1 ? grid.dx() : grid.dx() * grid.dx();
}

double sum_sq(const double* u, std::size_t count) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += u[i] * u[i];
    return s;
}

// Derivative magnitudes along every axis, centered differences.
double grad_sq_integrand(const SpaceGrid& grid, const double* u, int nc) {
    const double inv_2dx = 1.0 / (2.0 * grid.dx());
    const std::size_t total = grid.total();
    std::vector<double> d(total * static_cast<std::size_t>(nc));
    double s = 0.0;
    if (grid.dim == 1) {
        kernels_serial::gradient_1d(u, d.data(), total, nc, inv_2dx);
        s = sum_sq(d.data(), d.size());
    } else {
        const int n = grid.n;
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int c = 0; c < nc; ++c) {
                    const auto idx = [&](int a, int b) {
                        return (static_cast<std::size_t>(grid.wrap(a)) * n + grid.wrap(b)) * nc + c;
                    };
                    const double dx1 = (u[idx(j1 + 1, j2)] - u[idx(j1 - 1, j2)]) * inv_2dx;
                    const double dx2 = (u[idx(j1, j2 + 1)] - u[idx(j1, j2 - 1)]) * inv_2dx;
                    s += dx1 * dx1 + dx2 * dx2;
                }
    }
    return s;
}

double lap_sq_integrand(const SpaceGrid& grid, const double* u, int nc) {
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    const std::size_t total = grid.total();
    double s = 0.0;
    if (grid.dim == 1) {
        std::vector<double> l(total * static_cast<std::size_t>(nc));
        kernels_serial::laplacian_1d(u, l.data(), total, nc, inv_dx2);
        s = sum_sq(l.data(), l.size());
    } else {
        const int n = grid.n;
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int c = 0; c < nc; ++c) {
                    const auto idx = [&](int a, int b) {
                        return (static_cast<std::size_t>(grid.wrap(a)) * n + grid.wrap(b)) * nc + c;
                    };
                    const double lap = (u[idx(j1 + 1, j2)] + u[idx(j1 - 1, j2)] +
                                        u[idx(j1, j2 + 1)] + u[idx(j1, j2 - 1)] -
                                        4.0 * u[idx(j1, j2)]) *
                                       inv_dx2;
                    s += lap * lap;
                }
    }
    return s;
}

}  // namespace

double frame_l2(const SpaceGrid& grid, const double* u, int components) {
    return std::sqrt(volume_element(grid) *
                     sum_sq(u, grid.total() * static_cast<std::size_t>(components)));
}

double frame_h1_sq(const SpaceGrid& grid, const double* u, int components) {
    return volume_element(grid) *
           (sum_sq(u, grid.total() * static_cast<std::size_t>(components)) +
            grad_sq_integrand(grid, u, components));
}

double frame_h2_sq(const SpaceGrid& grid, const double* u, int components) {
    return frame_h1_sq(grid, u, components) +
           volume_element(grid) * lap_sq_integrand(grid, u, components);
}

FieldNorms discrete_norms(const Field& f, double p) {
    const std::size_t nt = f.times.size();
    FieldNorms out;
    std::vector<double> h2sq(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const double* u = f.frame(k);
        out.linf_l2 = std::max(out.linf_l2, frame_l2(f.grid, u, f.components));
        out.linf_h1 = std::max(out.linf_h1, std::sqrt(frame_h1_sq(f.grid, u, f.components)));
        h2sq[k] = frame_h2_sq(f.grid, u, f.components);
    }
    double time_int = 0.0;
    for (std::size_t k = 0; k + 1 < nt; ++k)
        time_int += 0.5 * f.times.dt(k) * (h2sq[k] + h2sq[k + 1]);
    out.l2_h2 = std::sqrt(time_int);

    const double vol = volume_element(f.grid);
    const std::size_t fs = f.frame_size();
    auto l2_gap = [&](std::size_t i, std::size_t j) {
        const double* a = f.frame(i);
        const double* b = f.frame(j);
        double s = 0.0;
        for (std::size_t m = 0; m < fs; ++m) {
            const double d = b[m] - a[m];
            s += d * d;
        }
        return std::sqrt(vol * s);
    };
    out.pvar_l2 = two_index_p_variation(l2_gap, nt, p);
    return out;
}

double squared_energy(const FieldNorms& n) {
    return n.linf_h1 * n.linf_h1 + n.l2_h2 * n.l2_h2;
}

Field field_difference(const Field& a, const Field& b) {
    if (a.data.size() != b.data.size() || a.components != b.components ||
        a.grid.n != b.grid.n || a.grid.dim != b.grid.dim)
        throw std::invalid_argument("field_difference: layout mismatch");
    Field d = a;
    for (std::size_t i = 0; i < d.data.size(); ++i) d.data[i] -= b.data[i];
    return d;
}

double linf_l2_gap(const Field& a, const Field& b) {
    if (a.data.size() != b.data.size() || a.components != b.components)
        throw std::invalid_argument("linf_l2_gap: layout mismatch");
    double worst = 0.0;
    std::vector<double> tmp(a.frame_size());
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        const double* x = a.frame(k);
        const double* y = b.frame(k);
        for (std::size_t m = 0; m < tmp.size(); ++m) tmp[m] = x[m] - y[m];
        worst = std::max(worst, frame_l2(a.grid, tmp.data(), a.components));
    }
    return worst;
}

bool EnergyReport::nonincreasing(double tol) const {
    for (std::size_t k = 0; k + 1 < h1_sq_per_time.size(); ++k)
        if (h1_sq_per_time[k + 1] > h1_sq_per_time[k] + tol) return false;
    return true;
}

EnergyReport energy_report(const Field& f, const std::vector<double>& u0) {
    if (u0.size() != f.frame_size())
        throw std::invalid_argument("energy_report: initial data size mismatch");
    EnergyReport r;
    r.energy_sq = squared_energy(discrete_norms(f));
    r.u0_h1_sq = frame_h1_sq(f.grid, u0.data(), f.components);
    r.constant = r.u0_h1_sq > 0.0 ? r.energy_sq / r.u0_h1_sq
                                  : (r.energy_sq > 0.0
                                         ? std::numeric_limits<double>::infinity()
                                         : 0.0);
    r.h1_sq_per_time.resize(f.times.size());
    for (std::size_t k = 0; k < f.times.size(); ++k)
        r.h1_sq_per_time[k] = frame_h1_sq(f.grid, f.frame(k), f.components);
    return r;
}

}  // namespace rpde
