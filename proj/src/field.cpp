#include "pdechunk/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "pdechunk/errors.hpp"

namespace pdechunk {

namespace {

void check_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("field values must be finite");
        }
    }
}

}  // namespace

Field::Field(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), values_(rows * cols, value) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("field dimensions must be at least 1");
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("field fill value must be finite");
    }
}

Field::Field(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("field dimensions must be at least 1");
    }
    if (values_.size() != rows * cols) {
        throw std::invalid_argument("field value count does not match shape");
    }
    check_finite(values_);
}

Field Field::column(std::span<const double> values) {
    return Field(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

std::size_t Field::interior_size() const {
    if (rows_ < 3 || cols_ < 3) return 0;
    return (rows_ - 2) * (cols_ - 2);
}

std::vector<double> Field::interior() const {
    std::vector<double> out;
    out.reserve(interior_size());
    for (std::size_t i = 1; i + 1 < rows_; ++i) {
        for (std::size_t j = 1; j + 1 < cols_; ++j) {
            out.push_back((*this)(i, j));
        }
    }
    return out;
}

void Field::set_interior(std::span<const double> values) {
    if (values.size() != interior_size()) {
        throw ShapeMismatchError("interior size mismatch");
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i + 1 < rows_; ++i) {
        for (std::size_t j = 1; j + 1 < cols_; ++j) {
            (*this)(i, j) = values[k++];
        }
    }
}

void Field::append_bytes(std::vector<std::uint8_t>& out) const {
    static_assert(sizeof(double) == 8);
    for (double v : values_) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
        }
    }
}

Field Field::from_bytes(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t cols) {
    const std::size_t n = rows * cols;
    if (bytes.size() < n * 8) {
        throw TruncatedPayloadError("field payload shorter than shape requires");
    }
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(bytes[k * 8 + b]) << (8 * b);
        }
        values[k] = std::bit_cast<double>(bits);
    }
    return Field(rows, cols, std::move(values));
}

void BoundarySpec::validate() const {
    for (double v : {top, bottom, left, right}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("boundary values must be finite");
        }
    }
}

Field make_uniform_field(std::size_t rows, std::size_t cols, double value) {
    return Field(rows, cols, value);
}

Field apply_dirichlet(const Field& field, const BoundarySpec& boundary) {
    if (field.is_1d()) {
        throw std::invalid_argument("apply_dirichlet requires a 2D field");
    }
    if (field.rows() < 3 || field.cols() < 3) {
        throw std::invalid_argument("apply_dirichlet requires at least a 3x3 field");
    }
    boundary.validate();

    Field out = field;
    const std::size_t last_row = out.rows() - 1;
    const std::size_t last_col = out.cols() - 1;
    for (std::size_t j = 0; j <= last_col; ++j) {
        out(0, j) = boundary.top;
        out(last_row, j) = boundary.bottom;
    }
    for (std::size_t i = 0; i <= last_row; ++i) {
        out(i, 0) = boundary.left;
        out(i, last_col) = boundary.right;
    }
    return out;
}

}  // namespace pdechunk
