#include "pdechunk/laplace.hpp"

#include <cmath>
#include <stdexcept>

#include "pdechunk/errors.hpp"

namespace pdechunk {

LaplaceResult laplace_solve_2d(const Field& boundary_field, const Field& mask, double tol,
                               std::size_t max_iters) {
    if (boundary_field.rows() != mask.rows() || boundary_field.cols() != mask.cols()) {
        throw ShapeMismatchError("boundary field and mask shapes differ");
    }
    if (boundary_field.rows() < 3 || boundary_field.cols() < 3) {
        throw std::invalid_argument("laplace_solve_2d requires at least a 3x3 grid");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    const std::size_t rows = mask.rows();
    const std::size_t cols = mask.cols();
    bool any_fixed = false;
    for (double v : mask.values()) {
        if (v != 0.0) {
            any_fixed = true;
            break;
        }
    }
    if (!any_fixed) {
        throw std::invalid_argument("mask must fix at least one node");
    }
    for (std::size_t j = 0; j < cols; ++j) {
        if (mask(0, j) == 0.0 || mask(rows - 1, j) == 0.0) {
            throw std::invalid_argument("border nodes must be fixed");
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (mask(i, 0) == 0.0 || mask(i, cols - 1) == 0.0) {
            throw std::invalid_argument("border nodes must be fixed");
        }
    }

    LaplaceResult result;
    result.field = boundary_field;
    Field& t = result.field;
    for (std::size_t sweep = 1; sweep <= max_iters; ++sweep) {
        double max_update = 0.0;
        for (std::size_t i = 1; i + 1 < rows; ++i) {
            for (std::size_t j = 1; j + 1 < cols; ++j) {
                if (mask(i, j) != 0.0) continue;
                const double updated =
                    0.25 * (t(i + 1, j) + t(i - 1, j) + t(i, j + 1) + t(i, j - 1));
                max_update = std::max(max_update, std::abs(updated - t(i, j)));
                t(i, j) = updated;
            }
        }
        result.iterations = sweep;
        result.last_max_update = max_update;
        if (max_update < tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

Field edge_dirichlet_field(std::size_t rows, std::size_t cols, const BoundarySpec& boundary) {
    return apply_dirichlet(Field(rows, cols, 0.0), boundary);
}

Field edge_mask(std::size_t rows, std::size_t cols) {
    Field mask(rows, cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        mask(0, j) = 1.0;
        mask(rows - 1, j) = 1.0;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        mask(i, 0) = 1.0;
        mask(i, cols - 1) = 1.0;
    }
    return mask;
}

}  // namespace pdechunk
