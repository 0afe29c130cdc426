#include "pdechunk/tridiagonal.hpp"

#include <stdexcept>

#include "pdechunk/errors.hpp"

namespace pdechunk {

void thomas_solve_inplace(std::span<const double> lower, std::span<const double> diag,
                          std::span<const double> upper, std::span<const double> rhs,
                          std::span<double> x, std::span<double> scratch) {
    const std::size_t m = diag.size();
    if (m == 0) {
        throw std::invalid_argument("tridiagonal system must be non-empty");
    }
    if (lower.size() != m || upper.size() != m || rhs.size() != m || x.size() != m ||
        scratch.size() < m) {
        throw std::invalid_argument("tridiagonal system bands must share one length");
    }

    if (diag[0] == 0.0) {
        throw SingularSystemError("zero pivot at row 0");
    }
    scratch[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < m; ++i) {
        const double pivot = diag[i] - lower[i] * scratch[i - 1];
        if (pivot == 0.0) {
            throw SingularSystemError("zero pivot at row " + std::to_string(i));
        }
        scratch[i] = upper[i] / pivot;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        x[i] -= scratch[i] * x[i + 1];
    }
}

std::vector<double> thomas_solve(const TridiagonalSystem& system) {
    std::vector<double> x(system.diag.size());
    std::vector<double> scratch(system.diag.size());
    thomas_solve_inplace(system.lower, system.diag, system.upper, system.rhs, x, scratch);
    return x;
}

}  // namespace pdechunk
