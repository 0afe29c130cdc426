#pragma once

#include <span>
#include <vector>

namespace pdechunk {

enum class SchemeKind { Explicit, Implicit, CrankNicolson, ADI, BurgersUpwind, LaplaceIterative };

enum class Stability { Stable, ConditionallyUnstable };

/// The explicit scheme is stable only for lambda <= 1/2; the implicit family
/// is stable for all lambda >= 0. The upwind and iterative schemes are not
/// governed by lambda and classify as Stable (the upwind scheme enforces its
/// CFL bound at step time instead).
Stability stability_classify(SchemeKind scheme, double lambda);

struct ExplicitStepResult {
    std::vector<double> values;
    bool stability_warning = false;  // set when lambda > 1/2
};

/// Forward-time centered-space update of the interior nodes. left/right are
/// the boundary values at the current step.
ExplicitStepResult explicit_step_1d(std::span<const double> interior, double left, double right,
                                    double lambda);

/// Backward-time step: solves the tridiagonal system with diagonal 1+2*lambda
/// and off-diagonals -lambda; left/right are boundary values at the next step.
std::vector<double> implicit_step_1d(std::span<const double> interior, double left_next,
                                     double right_next, double lambda);

/// Crank-Nicolson step: spatial second derivative averaged between the time
/// levels, diagonal 2*(1+lambda). Boundary values are needed at both levels.
std::vector<double> crank_nicolson_step_1d(std::span<const double> interior, double left_now,
                                           double left_next, double right_now, double right_next,
                                           double lambda);

}  // namespace pdechunk
