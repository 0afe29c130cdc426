#pragma once

#include <span>

#include "pdechunk/field.hpp"

namespace pdechunk {

/// Mean absolute difference; shapes must match.
double mae(const Field& a, const Field& b);
double mae(std::span<const double> a, std::span<const double> b);

/// Mean squared difference; shapes must match.
double mse(const Field& a, const Field& b);
double mse(std::span<const double> a, std::span<const double> b);

}  // namespace pdechunk
