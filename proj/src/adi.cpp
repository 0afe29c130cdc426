#include "pdechunk/adi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdechunk/tridiagonal.hpp"

namespace pdechunk {

namespace {

struct AdiWorkspace {
    std::vector<double> lower, diag, upper, rhs, x, scratch;

    void resize(std::size_t m, double lambda) {
        lower.assign(m, -lambda);
        diag.assign(m, 2.0 * (1.0 + lambda));
        upper.assign(m, -lambda);
        rhs.resize(m);
        x.resize(m);
        scratch.resize(m);
    }
};

}  // namespace

Field adi_step_2d(const Field& field, const BoundarySpec& boundary, double lambda) {
    if (field.rows() < 3 || field.cols() < 3) {
        throw std::invalid_argument("adi_step_2d requires at least a 3x3 field");
    }
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("lambda must be finite and nonnegative");
    }
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    const double off = 1.0 - lambda;

    // First half step: rows are coupled implicitly along x, the y derivative
    // is taken explicitly from the current field.
    Field half = apply_dirichlet(Field(rows, cols, 0.0), boundary);
    AdiWorkspace ws;
    ws.resize(cols - 2, lambda);
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            ws.rhs[j - 1] = lambda * field(i - 1, j) + 2.0 * off * field(i, j) +
                            lambda * field(i + 1, j);
        }
        ws.rhs[0] += lambda * boundary.left;
        ws.rhs[cols - 3] += lambda * boundary.right;
        thomas_solve_inplace(ws.lower, ws.diag, ws.upper, ws.rhs, ws.x, ws.scratch);
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            half(i, j) = ws.x[j - 1];
        }
    }

    // Second half step: columns are coupled implicitly along y, the x
    // derivative comes from the half-step field.
    Field next = apply_dirichlet(Field(rows, cols, 0.0), boundary);
    ws.resize(rows - 2, lambda);
    for (std::size_t j = 1; j + 1 < cols; ++j) {
        for (std::size_t i = 1; i + 1 < rows; ++i) {
            ws.rhs[i - 1] = lambda * half(i, j - 1) + 2.0 * off * half(i, j) +
                            lambda * half(i, j + 1);
        }
        ws.rhs[0] += lambda * boundary.top;
        ws.rhs[rows - 3] += lambda * boundary.bottom;
        thomas_solve_inplace(ws.lower, ws.diag, ws.upper, ws.rhs, ws.x, ws.scratch);
        for (std::size_t i = 1; i + 1 < rows; ++i) {
            next(i, j) = ws.x[i - 1];
        }
    }
    return next;
}

Trajectory heat_solve_2d(const HeatProblem& problem, std::size_t steps) {
    Trajectory trajectory;
    Field state = problem.initial_state();
    trajectory.push_back(0, state);
    for (std::size_t l = 1; l <= steps; ++l) {
        state = adi_step_2d(state, problem.boundary(), problem.lambda());
        trajectory.push_back(l, state);
    }
    return trajectory;
}

Field heat_final_state_2d(const HeatProblem& problem, std::size_t steps) {
    Field state = problem.initial_state();
    for (std::size_t l = 0; l < steps; ++l) {
        state = adi_step_2d(state, problem.boundary(), problem.lambda());
    }
    return state;
}

}  // namespace pdechunk
