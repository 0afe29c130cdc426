#include "pdechunk/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdechunk/errors.hpp"

namespace pdechunk {

namespace {

inline double burgers_flux(double u) { return 0.5 * u * u; }

// Godunov flux for the convex flux u^2/2.
inline double godunov_flux(double left, double right) {
    return std::max(burgers_flux(std::max(left, 0.0)), burgers_flux(std::min(right, 0.0)));
}

}  // namespace

std::vector<double> burgers_step_1d(std::span<const double> u, double dt, double dx) {
    if (u.empty()) {
        throw std::invalid_argument("burgers_step_1d requires at least one cell");
    }
    if (!(dt > 0.0) || !(dx > 0.0)) {
        throw std::invalid_argument("dt and dx must be positive");
    }
    const std::size_t n = u.size();
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    const double cfl = umax * dt / dx;
    if (cfl > 1.0) {
        throw CflViolationError("CFL number " + std::to_string(cfl) + " exceeds 1");
    }

    const double r = dt / dx;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i == 0) ? u[0] : u[i - 1];
        const double right = (i + 1 == n) ? u[n - 1] : u[i + 1];
        const double flux_hi = godunov_flux(u[i], right);
        const double flux_lo = godunov_flux(left, u[i]);
        next[i] = u[i] - r * (flux_hi - flux_lo);
    }
    return next;
}

Trajectory burgers_solve_1d(const BurgersProblem& problem, std::size_t steps) {
    Trajectory trajectory;
    std::vector<double> u = problem.initial;
    trajectory.push_back(0, Field::column(u));
    for (std::size_t l = 1; l <= steps; ++l) {
        u = burgers_step_1d(u, problem.dt, problem.dx);
        trajectory.push_back(l, Field::column(u));
    }
    return trajectory;
}

double total_variation(std::span<const double> u) {
    double tv = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        tv += std::abs(u[i] - u[i - 1]);
    }
    return tv;
}

}  // namespace pdechunk
