#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdechunk/field.hpp"

namespace pdechunk {

/// 2D transient heat conduction setup: grid geometry, Dirichlet edges, an
/// initial interior temperature (uniform, or a full field), and the collective
/// coefficient lambda = k*dt/dx^2. The grid is square-spaced (dx == dy).
class HeatProblem {
public:
    HeatProblem(std::size_t rows, std::size_t cols, BoundarySpec boundary,
                double initial_value, double lambda);
    HeatProblem(BoundarySpec boundary, Field initial_field, double lambda);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const BoundarySpec& boundary() const { return boundary_; }
    double lambda() const { return lambda_; }
    double initial_value() const { return initial_value_; }
    std::size_t interior_count() const { return (rows_ - 2) * (cols_ - 2); }

    /// Grid spacing is uniform in both directions; non-square spacing is
    /// unsupported.
    bool square_grid() const { return true; }

    /// State at time index 0: the initial condition with edges applied.
    Field initial_state() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    BoundarySpec boundary_;
    double initial_value_ = 0.0;
    std::optional<Field> initial_field_;
    double lambda_ = 0.0;
};

/// Ordered sequence of (time index, state); indices strictly increase and all
/// states share one shape.
class Trajectory {
public:
    Trajectory() = default;

    void push_back(std::size_t time_index, Field state);

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::size_t index(std::size_t i) const { return indices_[i]; }
    const Field& state(std::size_t i) const { return states_[i]; }
    const std::vector<std::size_t>& indices() const { return indices_; }

    bool has_index(std::size_t time_index) const;
    const Field& state_at(std::size_t time_index) const;

    bool operator==(const Trajectory& other) const = default;

private:
    std::vector<std::size_t> indices_;
    std::vector<Field> states_;
};

}  // namespace pdechunk
