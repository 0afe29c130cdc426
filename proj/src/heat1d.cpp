#include "pdechunk/heat1d.hpp"

#include <cmath>
#include <stdexcept>

#include "pdechunk/tridiagonal.hpp"

namespace pdechunk {

namespace {

void check_step_args(std::span<const double> interior, double lambda) {
    if (interior.empty()) {
        throw std::invalid_argument("at least one interior node required");
    }
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("lambda must be finite and nonnegative");
    }
}

}  // namespace

Stability stability_classify(SchemeKind scheme, double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("lambda must be finite and nonnegative");
    }
    if (scheme == SchemeKind::Explicit) {
        return lambda <= 0.5 ? Stability::Stable : Stability::ConditionallyUnstable;
    }
    return Stability::Stable;
}

ExplicitStepResult explicit_step_1d(std::span<const double> interior, double left, double right,
                                    double lambda) {
    check_step_args(interior, lambda);
    const std::size_t m = interior.size();
    ExplicitStepResult result;
    result.stability_warning = lambda > 0.5;
    result.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = (i == 0) ? left : interior[i - 1];
        const double hi = (i + 1 == m) ? right : interior[i + 1];
        result.values[i] = interior[i] + lambda * (hi - 2.0 * interior[i] + lo);
    }
    return result;
}

std::vector<double> implicit_step_1d(std::span<const double> interior, double left_next,
                                     double right_next, double lambda) {
    check_step_args(interior, lambda);
    const std::size_t m = interior.size();
    TridiagonalSystem sys;
    sys.lower.assign(m, -lambda);
    sys.diag.assign(m, 1.0 + 2.0 * lambda);
    sys.upper.assign(m, -lambda);
    sys.rhs.assign(interior.begin(), interior.end());
    sys.rhs[0] += lambda * left_next;
    sys.rhs[m - 1] += lambda * right_next;
    return thomas_solve(sys);
}

std::vector<double> crank_nicolson_step_1d(std::span<const double> interior, double left_now,
                                           double left_next, double right_now, double right_next,
                                           double lambda) {
    check_step_args(interior, lambda);
    const std::size_t m = interior.size();
    TridiagonalSystem sys;
    sys.lower.assign(m, -lambda);
    sys.diag.assign(m, 2.0 * (1.0 + lambda));
    sys.upper.assign(m, -lambda);
    sys.rhs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = (i == 0) ? left_now : interior[i - 1];
        const double hi = (i + 1 == m) ? right_now : interior[i + 1];
        sys.rhs[i] = lambda * lo + 2.0 * (1.0 - lambda) * interior[i] + lambda * hi;
    }
    sys.rhs[0] += lambda * left_next;
    sys.rhs[m - 1] += lambda * right_next;
    return thomas_solve(sys);
}

}  // namespace pdechunk
