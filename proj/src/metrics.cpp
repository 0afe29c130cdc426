#include "pdechunk/metrics.hpp"

#include <cmath>

#include "pdechunk/errors.hpp"

namespace pdechunk {

double mae(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw ShapeMismatchError("mae requires equal non-empty sizes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return sum / static_cast<double>(a.size());
}

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw ShapeMismatchError("mse requires equal non-empty sizes");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double mae(const Field& a, const Field& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("mae requires matching field shapes");
    }
    return mae(a.values(), b.values());
}

double mse(const Field& a, const Field& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("mse requires matching field shapes");
    }
    return mse(a.values(), b.values());
}

}  // namespace pdechunk
