#pragma once

#include <cstddef>
#include <functional>
#include <vector>

// Independent references for the test suites. Deliberately self-contained:
// nothing here includes or links the library under test.
namespace oracles {

// Exact p-variation by exhaustive enumeration of all partitions; the
// partition breakpoints range over every subset of interior points.
// Refuses more than 14 points.
double pvar_bruteforce(const std::vector<std::vector<double>>& samples, double p);

enum class Calculus { Stratonovich, Ito };

// Closed form for the 1-D periodic heat equation with spatially constant
// multiplicative noise c dX: exp(c X_{0,t}) P_t u0 (Stratonovich) or
// exp(c X_{0,t} - c^2 t / 2) P_t u0 (Ito). The heat semigroup P_t acts
// exactly on the grid's Fourier modes via a naive DFT. Only the commuting
// (constant-profile) case exists; the profile never enters except as c.
std::vector<double> commuting_heat_exact(const std::vector<double>& u0, double c, double x_0t,
                                         double t, Calculus mode);

// Scalar cubic reaction ODE y' = y (1 - y^2), classical RK4 at a fixed
// fine step.
double ode_reference_cubic(double y0, double horizon, double step = 1e-6);

// Dense-grid trapezoid approximation of int_0^1 a(t) db(t).
double young_trapezoid_dense(const std::function<double(double)>& a,
                             const std::function<double(double)>& b, std::size_t n);

}  // namespace oracles
