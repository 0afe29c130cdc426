#pragma once

// Test-only oracles, independent of the library's solve paths: dense
// linear-algebra assemblies of the scheme equations via Eigen, and a
// characteristic-tracing solution for the advection problem.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "pdechunk/field.hpp"
#include "pdechunk/tridiagonal.hpp"

namespace oracles {

inline Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs) {
    return a.partialPivLu().solve(rhs);
}

inline std::vector<double> dense_tridiagonal_solve(const pdechunk::TridiagonalSystem& sys) {
    const auto m = static_cast<Eigen::Index>(sys.diag.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = sys.diag[static_cast<std::size_t>(i)];
        if (i > 0) a(i, i - 1) = sys.lower[static_cast<std::size_t>(i)];
        if (i + 1 < m) a(i, i + 1) = sys.upper[static_cast<std::size_t>(i)];
        rhs(i) = sys.rhs[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd x = dense_solve(a, rhs);
    return std::vector<double>(x.data(), x.data() + m);
}

inline double tridiagonal_residual(const pdechunk::TridiagonalSystem& sys,
                                   const std::vector<double>& x) {
    const auto m = static_cast<Eigen::Index>(sys.diag.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = sys.diag[static_cast<std::size_t>(i)];
        if (i > 0) a(i, i - 1) = sys.lower[static_cast<std::size_t>(i)];
        if (i + 1 < m) a(i, i + 1) = sys.upper[static_cast<std::size_t>(i)];
        rhs(i) = sys.rhs[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd xe = Eigen::Map<const Eigen::VectorXd>(x.data(), m);
    return (a * xe - rhs).cwiseAbs().maxCoeff();
}

// Backward-time rows: -lam*T[i-1] + (1+2lam)*T[i] - lam*T[i+1] = T_old[i],
// with lam * boundary added to the first/last right-hand side.
inline std::vector<double> dense_implicit_step(const std::vector<double>& interior, double left,
                                               double right, double lam) {
    const auto m = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = 1.0 + 2.0 * lam;
        if (i > 0) a(i, i - 1) = -lam;
        if (i + 1 < m) a(i, i + 1) = -lam;
        rhs(i) = interior[static_cast<std::size_t>(i)];
    }
    rhs(0) += lam * left;
    rhs(m - 1) += lam * right;
    const Eigen::VectorXd x = dense_solve(a, rhs);
    return std::vector<double>(x.data(), x.data() + m);
}

// Time-averaged rows: -lam*T[i-1]' + 2(1+lam)*T[i]' - lam*T[i+1]' =
// lam*T[i-1] + 2(1-lam)*T[i] + lam*T[i+1], boundaries entering at both
// levels.
inline std::vector<double> dense_crank_nicolson_step(const std::vector<double>& interior,
                                                     double left_now, double left_next,
                                                     double right_now, double right_next,
                                                     double lam) {
    const auto m = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = 2.0 * (1.0 + lam);
        if (i > 0) a(i, i - 1) = -lam;
        if (i + 1 < m) a(i, i + 1) = -lam;
        const double lo = (i == 0) ? left_now : interior[static_cast<std::size_t>(i - 1)];
        const double hi =
            (i + 1 == m) ? right_now : interior[static_cast<std::size_t>(i + 1)];
        rhs(i) = lam * lo + 2.0 * (1.0 - lam) * interior[static_cast<std::size_t>(i)] + lam * hi;
    }
    rhs(0) += lam * left_next;
    rhs(m - 1) += lam * right_next;
    const Eigen::VectorXd x = dense_solve(a, rhs);
    return std::vector<double>(x.data(), x.data() + m);
}

// Replays one alternating-direction step with both half-step sweeps
// assembled as dense systems and solved by LU.
inline pdechunk::Field dense_adi_step(const pdechunk::Field& field,
                                      const pdechunk::BoundarySpec& bc, double lam) {
    using pdechunk::Field;
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    const auto mx = static_cast<Eigen::Index>(cols - 2);
    const auto my = static_cast<Eigen::Index>(rows - 2);

    Field half = pdechunk::apply_dirichlet(Field(rows, cols, 0.0), bc);
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(mx, mx);
        Eigen::VectorXd rhs(mx);
        for (Eigen::Index r = 0; r < mx; ++r) {
            const std::size_t j = static_cast<std::size_t>(r) + 1;
            a(r, r) = 2.0 * (1.0 + lam);
            if (r > 0) a(r, r - 1) = -lam;
            if (r + 1 < mx) a(r, r + 1) = -lam;
            rhs(r) = lam * field(i - 1, j) + 2.0 * (1.0 - lam) * field(i, j) +
                     lam * field(i + 1, j);
        }
        rhs(0) += lam * bc.left;
        rhs(mx - 1) += lam * bc.right;
        const Eigen::VectorXd x = dense_solve(a, rhs);
        for (Eigen::Index r = 0; r < mx; ++r) half(i, static_cast<std::size_t>(r) + 1) = x(r);
    }

    Field next = pdechunk::apply_dirichlet(Field(rows, cols, 0.0), bc);
    for (std::size_t j = 1; j + 1 < cols; ++j) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(my, my);
        Eigen::VectorXd rhs(my);
        for (Eigen::Index r = 0; r < my; ++r) {
            const std::size_t i = static_cast<std::size_t>(r) + 1;
            a(r, r) = 2.0 * (1.0 + lam);
            if (r > 0) a(r, r - 1) = -lam;
            if (r + 1 < my) a(r, r + 1) = -lam;
            rhs(r) = lam * half(i, j - 1) + 2.0 * (1.0 - lam) * half(i, j) +
                     lam * half(i, j + 1);
        }
        rhs(0) += lam * bc.top;
        rhs(my - 1) += lam * bc.bottom;
        const Eigen::VectorXd x = dense_solve(a, rhs);
        for (Eigen::Index r = 0; r < my; ++r) next(static_cast<std::size_t>(r) + 1, j) = x(r);
    }
    return next;
}

/// Smooth pre-shock solution of u_t + u u_x = 0 by characteristic tracing:
/// u(x, t) solves u = u0(x - u t), found by fixed-point iteration (valid
/// while t * max|u0'| < 1). u0 is extended as a constant beyond [0, 1].
inline double characteristics_solution(const std::function<double(double)>& u0, double x,
                                       double t) {
    double u = u0(x);
    for (int it = 0; it < 200; ++it) {
        const double next = u0(x - u * t);
        if (std::abs(next - u) < 1e-14) {
            return next;
        }
        u = next;
    }
    return u;
}

}  // namespace oracles
