#include "pdechunk/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdechunk {

namespace {

void check_lambda(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::invalid_argument("lambda must be finite and nonnegative");
    }
}

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("heat problem needs at least one interior node (3x3 grid)");
    }
}

}  // namespace

HeatProblem::HeatProblem(std::size_t rows, std::size_t cols, BoundarySpec boundary,
                         double initial_value, double lambda)
    : rows_(rows), cols_(cols), boundary_(std::move(boundary)),
      initial_value_(initial_value), lambda_(lambda) {
    check_shape(rows_, cols_);
    check_lambda(lambda_);
    boundary_.validate();
    if (!std::isfinite(initial_value_)) {
        throw std::invalid_argument("initial value must be finite");
    }
}

HeatProblem::HeatProblem(BoundarySpec boundary, Field initial_field, double lambda)
    : rows_(initial_field.rows()), cols_(initial_field.cols()),
      boundary_(std::move(boundary)), initial_field_(std::move(initial_field)),
      lambda_(lambda) {
    check_shape(rows_, cols_);
    check_lambda(lambda_);
    boundary_.validate();
}

Field HeatProblem::initial_state() const {
    Field base = initial_field_ ? *initial_field_ : Field(rows_, cols_, initial_value_);
    return apply_dirichlet(base, boundary_);
}

void Trajectory::push_back(std::size_t time_index, Field state) {
    if (!indices_.empty()) {
        if (time_index <= indices_.back()) {
            throw std::invalid_argument("trajectory time indices must strictly increase");
        }
        if (state.rows() != states_.front().rows() || state.cols() != states_.front().cols()) {
            throw std::invalid_argument("trajectory states must share one shape");
        }
    }
    indices_.push_back(time_index);
    states_.push_back(std::move(state));
}

bool Trajectory::has_index(std::size_t time_index) const {
    return std::binary_search(indices_.begin(), indices_.end(), time_index);
}

const Field& Trajectory::state_at(std::size_t time_index) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), time_index);
    if (it == indices_.end() || *it != time_index) {
        throw std::out_of_range("trajectory has no state at requested time index");
    }
    return states_[static_cast<std::size_t>(it - indices_.begin())];
}

}  // namespace pdechunk
