#pragma once

#include <cstddef>

#include "pdechunk/field.hpp"
#include "pdechunk/problem.hpp"

namespace pdechunk {

/// One alternating-direction-implicit step on a square-spaced grid. The input
/// must already carry its Dirichlet edges; the result does too. Two half-step
/// sweeps: implicit along x (one tridiagonal system per interior row), then
/// implicit along y (one per interior column). lambda is the full-step
/// k*dt/dx^2; the same Dirichlet values are used at both half steps.
Field adi_step_2d(const Field& field, const BoundarySpec& boundary, double lambda);

/// Trajectory of steps+1 states: state 0 is the initial condition with edges
/// applied, each later state one ADI step after its predecessor.
Trajectory heat_solve_2d(const HeatProblem& problem, std::size_t steps);

/// Final state only; avoids storing the trajectory for long runs.
Field heat_final_state_2d(const HeatProblem& problem, std::size_t steps);

}  // namespace pdechunk
