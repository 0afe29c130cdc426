#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdechunk/problem.hpp"

namespace pdechunk {

/// 1D inviscid Burgers setup for the upwind scheme; states are n-by-1 fields.
struct BurgersProblem {
    std::vector<double> initial;
    double dt = 0.0;
    double dx = 1.0;
};

/// One first-order Godunov upwind step for flux u^2/2, zero-gradient ghost
/// cells at both ends. Throws CflViolationError when max|u|*dt/dx > 1.
std::vector<double> burgers_step_1d(std::span<const double> u, double dt, double dx);

/// Trajectory of steps+1 column states from sequential upwind stepping.
Trajectory burgers_solve_1d(const BurgersProblem& problem, std::size_t steps);

/// Sum of absolute differences of adjacent cells.
double total_variation(std::span<const double> u);

}  // namespace pdechunk
