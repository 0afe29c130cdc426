#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pdechunk/burgers.hpp"
#include "pdechunk/datagen.hpp"
#include "pdechunk/field.hpp"
#include "pdechunk/problem.hpp"

namespace pdechunk {

/// Deterministic P-step advance map on fields: same input, same output, same
/// shape. Implementations are immutable after construction and safe to call
/// from many chunk workers at once.
class Propagator {
public:
    virtual ~Propagator() = default;

    virtual Field advance(const Field& state) const = 0;
    virtual std::size_t prediction_step() const = 0;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    virtual std::string kind() const = 0;

protected:
    void check_shape(const Field& state) const;
};

/// P sequential ADI steps under fixed Dirichlet edges and lambda.
class NumericalHeatPropagator final : public Propagator {
public:
    NumericalHeatPropagator(HeatProblem problem, std::size_t prediction_step);

    Field advance(const Field& state) const override;
    std::size_t prediction_step() const override { return prediction_step_; }
    std::size_t rows() const override { return problem_.rows(); }
    std::size_t cols() const override { return problem_.cols(); }
    std::string kind() const override { return "numerical-heat"; }

    const HeatProblem& problem() const { return problem_; }

private:
    HeatProblem problem_;
    std::size_t prediction_step_;
};

/// P sequential Godunov upwind steps.
class NumericalBurgersPropagator final : public Propagator {
public:
    NumericalBurgersPropagator(std::size_t cells, double dt, double dx,
                               std::size_t prediction_step);

    Field advance(const Field& state) const override;
    std::size_t prediction_step() const override { return prediction_step_; }
    std::size_t rows() const override { return cells_; }
    std::size_t cols() const override { return 1; }
    std::string kind() const override { return "numerical-burgers"; }

    double dt() const { return dt_; }
    double dx() const { return dx_; }

private:
    std::size_t cells_;
    double dt_;
    double dx_;
    std::size_t prediction_step_;
};

/// Exact reconstruction of the linear-plus-offset P-step heat map on the
/// interior nodes: advance(x) = M * x_interior + b with the probed Dirichlet
/// edges re-applied. Valid only for the (boundary, lambda) it was built from.
class AffinePropagator final : public Propagator {
public:
    AffinePropagator(Eigen::MatrixXd m, Eigen::VectorXd b, HeatProblem problem,
                     std::size_t prediction_step);

    Field advance(const Field& state) const override;
    std::size_t prediction_step() const override { return prediction_step_; }
    std::size_t rows() const override { return problem_.rows(); }
    std::size_t cols() const override { return problem_.cols(); }
    std::string kind() const override { return "affine"; }

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& offset() const { return offset_; }
    const HeatProblem& problem() const { return problem_; }

private:
    Eigen::MatrixXd matrix_;  // d x d, d = interior node count
    Eigen::VectorXd offset_;
    HeatProblem problem_;
    std::size_t prediction_step_;
};

/// Linear surrogate fit on dataset pairs: predicts standardized interior
/// values from the augmented standardized input [x; 1], then destandardizes.
/// Output edges are copied from the input (Dirichlet values are constant in
/// time, so the input edges are the boundary).
class RidgePropagator final : public Propagator {
public:
    RidgePropagator(Eigen::MatrixXd weights, Standardizer stats, std::size_t rows,
                    std::size_t cols, std::size_t prediction_step, double regularization);

    Field advance(const Field& state) const override;
    std::size_t prediction_step() const override { return prediction_step_; }
    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }
    std::string kind() const override { return "ridge"; }

    /// Weights in standardized space, d x (d+1) with the bias last.
    const Eigen::MatrixXd& weights() const { return weights_; }
    const Standardizer& stats() const { return stats_; }
    double regularization() const { return regularization_; }

    /// The equivalent raw-space map y = W_lin * x + w_bias, returned as the
    /// d x (d+1) matrix [W_lin | w_bias].
    Eigen::MatrixXd effective_weights() const;

private:
    Eigen::MatrixXd weights_;  // d x (d+1)
    Standardizer stats_;
    std::size_t rows_;
    std::size_t cols_;
    std::size_t prediction_step_;
    double regularization_;
};

/// Probes the numerical P-step map by brute force: b = F(zero interior) and
/// column j of M = F(e_j) - b, i.e. d+1 numerical propagations. Probe runs
/// are independent and distributed over `threads` workers.
AffinePropagator probe_affine(const HeatProblem& problem, std::size_t prediction_step,
                              std::size_t threads = 1);

/// Ridge regression through the normal equations A = X^T X + reg*I on
/// standardized data. With reg = 0 a rank-deficient normal matrix raises
/// SingularSystemError suggesting reg > 0.
RidgePropagator fit_ridge(const Dataset& dataset, double regularization);

/// Low-level fit on raw sample pairs (each of dimension d); used by
/// fit_ridge and directly testable on small systems.
Eigen::MatrixXd fit_ridge_weights(const std::vector<std::vector<double>>& inputs,
                                  const std::vector<std::vector<double>>& targets,
                                  double regularization);

// Propagator file, version tag "DNP1": JSON manifest (kind, P, shape, problem
// parameters, payload length, CRC-32) plus binary weights in the row-major
// little-endian field layout.
inline constexpr const char* kPropagatorVersion = "DNP1";

void save_propagator(const Propagator& propagator, const std::string& path);
std::unique_ptr<Propagator> load_propagator(const std::string& path);

std::vector<std::uint8_t> propagator_to_bytes(const Propagator& propagator);
std::unique_ptr<Propagator> propagator_from_bytes(const std::vector<std::uint8_t>& bytes);

}  // namespace pdechunk
