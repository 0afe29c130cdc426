#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pdechunk {

/// Dense real-valued grid function, row-major. 1D problems use cols == 1;
/// entry (i, j) is the value at grid point (x = j*dx, y = i*dy).
class Field {
public:
    Field() = default;
    Field(std::size_t rows, std::size_t cols, double value = 0.0);
    Field(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Wrap a 1D sample as an n-by-1 column field.
    static Field column(std::span<const double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    bool is_1d() const { return cols_ == 1; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Interior values in row-major order (all rows/cols except the edges).
    std::vector<double> interior() const;
    std::size_t interior_size() const;
    void set_interior(std::span<const double> values);

    /// Row-major 64-bit little-endian IEEE-754, no padding.
    void append_bytes(std::vector<std::uint8_t>& out) const;
    static Field from_bytes(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t cols);
    std::size_t byte_size() const { return values_.size() * sizeof(double); }

    bool operator==(const Field& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Constant-in-time Dirichlet edge temperatures. The numbered conditions map
/// to edges as bc1=top, bc2=bottom, bc3=left, bc4=right. For 1D problems the
/// optional functions give time-varying endpoint values by step index.
struct BoundarySpec {
    double top = 0.0;
    double bottom = 0.0;
    double left = 0.0;
    double right = 0.0;

    std::function<double(std::size_t)> left_at_step;
    std::function<double(std::size_t)> right_at_step;

    double left_at(std::size_t step) const { return left_at_step ? left_at_step(step) : left; }
    double right_at(std::size_t step) const { return right_at_step ? right_at_step(step) : right; }

    void validate() const;
};

Field make_uniform_field(std::size_t rows, std::size_t cols, double value);

/// Overwrite the edge rows/columns with the boundary values. Corners take the
/// value of the edge written last in the fixed order top, bottom, left, right;
/// corner values never enter interior stencils.
Field apply_dirichlet(const Field& field, const BoundarySpec& boundary);

}  // namespace pdechunk
