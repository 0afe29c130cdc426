#pragma once

#include <span>
#include <vector>

namespace pdechunk {

/// Tridiagonal linear system; lower[0] and upper[m-1] are unused.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;
};

/// Thomas forward-elimination / back-substitution, O(m).
/// Throws SingularSystemError on a zero pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& system);

/// In-place variant for hot loops: overwrites x with the solution and uses
/// scratch (size m) for the eliminated superdiagonal. rhs may alias x.
void thomas_solve_inplace(std::span<const double> lower, std::span<const double> diag,
                          std::span<const double> upper, std::span<const double> rhs,
                          std::span<double> x, std::span<double> scratch);

}  // namespace pdechunk
