#pragma once

#include <cmath>
#include <cstddef>

// Spatial kernels for the periodic solvers. Each kernel exists twice:
// rpde::kernels holds the OpenMP-parallel production version used by the
// solvers, rpde::kernels_serial the plain-loop reference kept for testing
// and benchmarking. The two must agree bitwise at one thread.

#if defined(RPDE_HAVE_OPENMP)
#define RPDE_OMP_FOR _Pragma("omp parallel for")
#else
#define RPDE_OMP_FOR
#endif

namespace rpde {

namespace kernels_detail {

// u, out: nx nodes, nc components. w, ww: per-node scalar noise levels.
// out = u + w u + ww u.
template <bool Par>
void apply_scalar_noise(const double* u, const double* w, const double* ww, double* out,
                        std::size_t nx, int nc) {
    const long total = static_cast<long>(nx) * nc;
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long i = 0; i < total; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) / static_cast<std::size_t>(nc);
            out[i] = u[i] * (1.0 + w[j] + ww[j]);
        }
    } else {
        for (long i = 0; i < total; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) / static_cast<std::size_t>(nc);
            out[i] = u[i] * (1.0 + w[j] + ww[j]);
        }
    }
}

// Cubic reaction r = u (1 - |u|^2), |u| over the nc components of a node.
template <bool Par>
void reaction_cubic(const double* u, double* r, std::size_t nx, int nc) {
    const long n = static_cast<long>(nx);
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long j = 0; j < n; ++j) {
            double s = 0.0;
            for (int c = 0; c < nc; ++c) s += u[j * nc + c] * u[j * nc + c];
            for (int c = 0; c < nc; ++c) r[j * nc + c] = u[j * nc + c] * (1.0 - s);
        }
    } else {
        for (long j = 0; j < n; ++j) {
            double s = 0.0;
            for (int c = 0; c < nc; ++c) s += u[j * nc + c] * u[j * nc + c];
            for (int c = 0; c < nc; ++c) r[j * nc + c] = u[j * nc + c] * (1.0 - s);
        }
    }
}

// 1-D periodic second difference, per component.
template <bool Par>
void laplacian_1d(const double* u, double* out, std::size_t nx, int nc, double inv_dx2) {
    const long n = static_cast<long>(nx);
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long j = 0; j < n; ++j) {
            const long jm = (j == 0) ? n - 1 : j - 1;
            const long jp = (j == n - 1) ? 0 : j + 1;
            for (int c = 0; c < nc; ++c)
                out[j * nc + c] =
                    (u[jm * nc + c] - 2.0 * u[j * nc + c] + u[jp * nc + c]) * inv_dx2;
        }
    } else {
        for (long j = 0; j < n; ++j) {
            const long jm = (j == 0) ? n - 1 : j - 1;
            const long jp = (j == n - 1) ? 0 : j + 1;
            for (int c = 0; c < nc; ++c)
                out[j * nc + c] =
                    (u[jm * nc + c] - 2.0 * u[j * nc + c] + u[jp * nc + c]) * inv_dx2;
        }
    }
}

// 1-D periodic centered first difference, per component.
template <bool Par>
void gradient_1d(const double* u, double* out, std::size_t nx, int nc, double inv_2dx) {
    const long n = static_cast<long>(nx);
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long j = 0; j < n; ++j) {
            const long jm = (j == 0) ? n - 1 : j - 1;
            const long jp = (j == n - 1) ? 0 : j + 1;
            for (int c = 0; c < nc; ++c)
                out[j * nc + c] = (u[jp * nc + c] - u[jm * nc + c]) * inv_2dx;
        }
    } else {
        for (long j = 0; j < n; ++j) {
            const long jm = (j == 0) ? n - 1 : j - 1;
            const long jp = (j == n - 1) ? 0 : j + 1;
            for (int c = 0; c < nc; ++c)
                out[j * nc + c] = (u[jp * nc + c] - u[jm * nc + c]) * inv_2dx;
        }
    }
}

// LLG geometric drift terms gamma(u) = u x u'' + u |u'|^2 at every node
// (3 components), from precomputed u'' (lap) and u' (grad).
template <bool Par>
void llg_gamma(const double* u, const double* lap, const double* grad, double* out,
               std::size_t nx) {
    const long n = static_cast<long>(nx);
    auto body = [&](long j) {
        const double* a = u + j * 3;
        const double* l = lap + j * 3;
        const double* g = grad + j * 3;
        const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        out[j * 3 + 0] = a[1] * l[2] - a[2] * l[1] + a[0] * g2;
        out[j * 3 + 1] = a[2] * l[0] - a[0] * l[2] + a[1] * g2;
        out[j * 3 + 2] = a[0] * l[1] - a[1] * l[0] + a[2] * g2;
    };
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long j = 0; j < n; ++j) body(j);
    } else {
        for (long j = 0; j < n; ++j) body(j);
    }
}

// Rodrigues rotation u <- exp(W(h)) u with W(h)v = v x h, per node;
// h holds the 3 driver increments at each node.
template <bool Par>
void rotate_exact(double* u, const double* h, std::size_t nx) {
    const long n = static_cast<long>(nx);
    auto body = [&](long j) {
        const double* a = h + j * 3;
        double* v = u + j * 3;
        const double theta2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        const double theta = std::sqrt(theta2);
        double s, c2;  // sin(t)/t and (1-cos t)/t^2, series for tiny t
        if (theta > 1e-6) {
            s = std::sin(theta) / theta;
            c2 = (1.0 - std::cos(theta)) / theta2;
        } else {
            s = 1.0 - theta2 / 6.0;
            c2 = 0.5 - theta2 / 24.0;
        }
        // W v = v x a, W^2 v = (v x a) x a
        const double w1x = v[1] * a[2] - v[2] * a[1];
        const double w1y = v[2] * a[0] - v[0] * a[2];
        const double w1z = v[0] * a[1] - v[1] * a[0];
        const double w2x = w1y * a[2] - w1z * a[1];
        const double w2y = w1z * a[0] - w1x * a[2];
        const double w2z = w1x * a[1] - w1y * a[0];
        v[0] += s * w1x + c2 * w2x;
        v[1] += s * w1y + c2 * w2y;
        v[2] += s * w1z + c2 * w2z;
    };
    if constexpr (Par) {
        RPDE_OMP_FOR
        for (long j = 0; j < n; ++j) body(j);
    } else {
        for (long j = 0; j < n; ++j) body(j);
    }
}

// Renormalize every node to the unit sphere; returns the largest |1 - |u||
// observed before renormalization.
template <bool Par>
double renormalize_sphere(double* u, std::size_t nx) {
    const long n = static_cast<long>(nx);
    double worst = 0.0;
    if constexpr (Par) {
#if defined(RPDE_HAVE_OPENMP)
#pragma omp parallel for reduction(max : worst)
#endif
        for (long j = 0; j < n; ++j) {
            double* v = u + j * 3;
            const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            worst = std::fmax(worst, std::fabs(1.0 - r));
            v[0] /= r;
            v[1] /= r;
            v[2] /= r;
        }
    } else {
        for (long j = 0; j < n; ++j) {
            double* v = u + j * 3;
            const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            worst = std::fmax(worst, std::fabs(1.0 - r));
            v[0] /= r;
            v[1] /= r;
            v[2] /= r;
        }
    }
    return worst;
}

}  // namespace kernels_detail

namespace kernels {
inline constexpr bool parallel = true;
inline void apply_scalar_noise(const double* u, const double* w, const double* ww, double* out,
                               std::size_t nx, int nc) {
    kernels_detail::apply_scalar_noise<true>(u, w, ww, out, nx, nc);
}
inline void reaction_cubic(const double* u, double* r, std::size_t nx, int nc) {
    kernels_detail::reaction_cubic<true>(u, r, nx, nc);
}
inline void laplacian_1d(const double* u, double* out, std::size_t nx, int nc, double inv_dx2) {
    kernels_detail::laplacian_1d<true>(u, out, nx, nc, inv_dx2);
}
inline void gradient_1d(const double* u, double* out, std::size_t nx, int nc, double inv_2dx) {
    kernels_detail::gradient_1d<true>(u, out, nx, nc, inv_2dx);
}
inline void llg_gamma(const double* u, const double* lap, const double* grad, double* out,
                      std::size_t nx) {
    kernels_detail::llg_gamma<true>(u, lap, grad, out, nx);
}
inline void rotate_exact(double* u, const double* h, std::size_t nx) {
    kernels_detail::rotate_exact<true>(u, h, nx);
}
inline double renormalize_sphere(double* u, std::size_t nx) {
    return kernels_detail::renormalize_sphere<true>(u, nx);
}
}  // namespace kernels

namespace kernels_serial {
inline void apply_scalar_noise(const double* u, const double* w, const double* ww, double* out,
                               std::size_t nx, int nc) {
    kernels_detail::apply_scalar_noise<false>(u, w, ww, out, nx, nc);
}
inline void reaction_cubic(const double* u, double* r, std::size_t nx, int nc) {
    kernels_detail::reaction_cubic<false>(u, r, nx, nc);
}
inline void laplacian_1d(const double* u, double* out, std::size_t nx, int nc, double inv_dx2) {
    kernels_detail::laplacian_1d<false>(u, out, nx, nc, inv_dx2);
}
inline void gradient_1d(const double* u, double* out, std::size_t nx, int nc, double inv_2dx) {
    kernels_detail::gradient_1d<false>(u, out, nx, nc, inv_2dx);
}
inline void llg_gamma(const double* u, const double* lap, const double* grad, double* out,
                      std::size_t nx) {
    kernels_detail::llg_gamma<false>(u, lap, grad, out, nx);
}
inline void rotate_exact(double* u, const double* h, std::size_t nx) {
    kernels_detail::rotate_exact<false>(u, h, nx);
}
inline double renormalize_sphere(double* u, std::size_t nx) {
    return kernels_detail::renormalize_sphere<false>(u, nx);
}
}  // namespace kernels_serial

}  // namespace rpde
