#pragma once

#include <cstddef>

#include "pdechunk/field.hpp"

namespace pdechunk {

struct LaplaceResult {
    Field field;
    bool converged = false;
    std::size_t iterations = 0;
    double last_max_update = 0.0;
};

/// Gauss-Seidel sweeps of the five-point average T = (N+S+E+W)/4 on the free
/// nodes until the max per-sweep update drops below tol or max_iters is
/// reached. mask entries != 0 mark fixed (Dirichlet) nodes; the four border
/// rows/columns must be fixed. Non-convergence is reported, not thrown.
LaplaceResult laplace_solve_2d(const Field& boundary_field, const Field& mask, double tol,
                               std::size_t max_iters);

/// Zeros with the boundary values written on the edges.
Field edge_dirichlet_field(std::size_t rows, std::size_t cols, const BoundarySpec& boundary);

/// Mask fixing exactly the four edges.
Field edge_mask(std::size_t rows, std::size_t cols);

}  // namespace pdechunk
