#include "pdechunk/propagator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pdechunk/adi.hpp"
#include "pdechunk/container_io.hpp"
#include "pdechunk/errors.hpp"

namespace pdechunk {

void Propagator::check_shape(const Field& state) const {
    if (state.rows() != rows() || state.cols() != cols()) {
        throw ShapeMismatchError("propagator built for " + std::to_string(rows()) + "x" +
                                 std::to_string(cols()) + ", got " +
                                 std::to_string(state.rows()) + "x" +
                                 std::to_string(state.cols()));
    }
}

NumericalHeatPropagator::NumericalHeatPropagator(HeatProblem problem, std::size_t prediction_step)
    : problem_(std::move(problem)), prediction_step_(prediction_step) {
    if (prediction_step_ < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
}

Field NumericalHeatPropagator::advance(const Field& state) const {
    check_shape(state);
    Field current = state;
    for (std::size_t s = 0; s < prediction_step_; ++s) {
        current = adi_step_2d(current, problem_.boundary(), problem_.lambda());
    }
    return current;
}

NumericalBurgersPropagator::NumericalBurgersPropagator(std::size_t cells, double dt, double dx,
                                                       std::size_t prediction_step)
    : cells_(cells), dt_(dt), dx_(dx), prediction_step_(prediction_step) {
    if (cells_ < 1) {
        throw std::invalid_argument("at least one cell required");
    }
    if (!(dt > 0.0) || !(dx > 0.0)) {
        throw std::invalid_argument("dt and dx must be positive");
    }
    if (prediction_step_ < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
}

Field NumericalBurgersPropagator::advance(const Field& state) const {
    check_shape(state);
    std::vector<double> u(state.values().begin(), state.values().end());
    for (std::size_t s = 0; s < prediction_step_; ++s) {
        u = burgers_step_1d(u, dt_, dx_);
    }
    return Field::column(u);
}

AffinePropagator::AffinePropagator(Eigen::MatrixXd m, Eigen::VectorXd b, HeatProblem problem,
                                   std::size_t prediction_step)
    : matrix_(std::move(m)), offset_(std::move(b)), problem_(std::move(problem)),
      prediction_step_(prediction_step) {
    const auto d = static_cast<Eigen::Index>(problem_.interior_count());
    if (matrix_.rows() != d || matrix_.cols() != d || offset_.size() != d) {
        throw ShapeMismatchError("affine weights do not match interior node count");
    }
    if (!matrix_.allFinite() || !offset_.allFinite()) {
        throw std::invalid_argument("affine weights must be finite");
    }
}

Field AffinePropagator::advance(const Field& state) const {
    check_shape(state);
    const std::vector<double> interior = state.interior();
    const Eigen::Map<const Eigen::VectorXd> x(interior.data(),
                                              static_cast<Eigen::Index>(interior.size()));
    const Eigen::VectorXd y = matrix_ * x + offset_;
    Field out = apply_dirichlet(state, problem_.boundary());
    out.set_interior(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
    return out;
}

AffinePropagator probe_affine(const HeatProblem& problem, std::size_t prediction_step,
                              std::size_t threads) {
    const NumericalHeatPropagator numerical(problem, prediction_step);
    const std::size_t d = problem.interior_count();
    const Field zero_interior = apply_dirichlet(Field(problem.rows(), problem.cols(), 0.0),
                                                problem.boundary());

    const std::vector<double> b_values = numerical.advance(zero_interior).interior();
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(b_values.data(),
                                                          static_cast<Eigen::Index>(d));

    // The linear part does not depend on the edge values, so the unit-vector
    // probes run with zero edges: there F(0) is exactly zero and the columns
    // come out at unit magnitude instead of as small differences of
    // boundary-sized values, which keeps the probe within oracle tolerance.
    const HeatProblem homogeneous(problem.rows(), problem.cols(), BoundarySpec{}, 0.0,
                                  problem.lambda());
    const NumericalHeatPropagator numerical_homogeneous(homogeneous, prediction_step);
    const Field zero_field(problem.rows(), problem.cols(), 0.0);

    Eigen::MatrixXd m(d, d);
    auto probe_column = [&](std::size_t j) {
        Field basis = zero_field;
        std::vector<double> e(d, 0.0);
        e[j] = 1.0;
        basis.set_interior(e);
        const std::vector<double> column = numerical_homogeneous.advance(basis).interior();
        for (std::size_t i = 0; i < d; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column[i];
        }
    };

    if (threads <= 1) {
        for (std::size_t j = 0; j < d; ++j) probe_column(j);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t j = next.fetch_add(1); j < d; j = next.fetch_add(1)) {
                probe_column(j);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t n = std::min(threads, d);
        pool.reserve(n);
        for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return AffinePropagator(std::move(m), std::move(b), problem, prediction_step);
}

RidgePropagator::RidgePropagator(Eigen::MatrixXd weights, Standardizer stats, std::size_t rows,
                                 std::size_t cols, std::size_t prediction_step,
                                 double regularization)
    : weights_(std::move(weights)), stats_(stats), rows_(rows), cols_(cols),
      prediction_step_(prediction_step), regularization_(regularization) {
    const auto d = static_cast<Eigen::Index>((rows_ - 2) * (cols_ - 2));
    if (weights_.rows() != d || weights_.cols() != d + 1) {
        throw ShapeMismatchError("ridge weights must be d x (d+1)");
    }
    if (!weights_.allFinite()) {
        throw std::invalid_argument("ridge weights must be finite");
    }
    if (!(stats_.stddev > 0.0)) {
        throw std::invalid_argument("standardizer requires positive stddev");
    }
}

Field RidgePropagator::advance(const Field& state) const {
    check_shape(state);
    const std::vector<double> interior = state.interior();
    const auto d = static_cast<Eigen::Index>(interior.size());
    Eigen::VectorXd augmented(d + 1);
    for (Eigen::Index i = 0; i < d; ++i) {
        augmented(i) = stats_.transform(interior[static_cast<std::size_t>(i)]);
    }
    augmented(d) = 1.0;
    const Eigen::VectorXd predicted = weights_ * augmented;
    Field out = state;
    std::vector<double> y(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        y[static_cast<std::size_t>(i)] = stats_.inverse(predicted(i));
    }
    out.set_interior(y);
    return out;
}

Eigen::MatrixXd RidgePropagator::effective_weights() const {
    const Eigen::Index d = weights_.rows();
    const Eigen::MatrixXd lin = weights_.leftCols(d);
    const Eigen::VectorXd bias_std = weights_.col(d);
    Eigen::MatrixXd raw(d, d + 1);
    raw.leftCols(d) = lin;
    raw.col(d) = stats_.mean * (Eigen::VectorXd::Ones(d) - lin * Eigen::VectorXd::Ones(d)) +
                 stats_.stddev * bias_std;
    return raw;
}

Eigen::MatrixXd fit_ridge_weights(const std::vector<std::vector<double>>& inputs,
                                  const std::vector<std::vector<double>>& targets,
                                  double regularization) {
    if (inputs.empty() || inputs.size() != targets.size()) {
        throw std::invalid_argument("need equally many inputs and targets, at least one pair");
    }
    if (!(regularization >= 0.0) || !std::isfinite(regularization)) {
        throw std::invalid_argument("regularization must be finite and nonnegative");
    }
    const auto n = static_cast<Eigen::Index>(inputs.size());
    const auto d = static_cast<Eigen::Index>(inputs.front().size());
    Eigen::MatrixXd x(n, d + 1);
    Eigen::MatrixXd y(n, d);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& in = inputs[static_cast<std::size_t>(r)];
        const auto& out = targets[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(in.size()) != d ||
            static_cast<Eigen::Index>(out.size()) != d) {
            throw ShapeMismatchError("all sample pairs must share one dimension");
        }
        for (Eigen::Index c = 0; c < d; ++c) {
            x(r, c) = in[static_cast<std::size_t>(c)];
            y(r, c) = out[static_cast<std::size_t>(c)];
        }
        x(r, d) = 1.0;
    }

    Eigen::MatrixXd normal = x.transpose() * x;
    normal.diagonal().array() += regularization;
    const Eigen::MatrixXd rhs = x.transpose() * y;

    if (regularization == 0.0) {
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
        if (!lu.isInvertible()) {
            throw SingularSystemError(
                "normal matrix is singular; refit with regularization > 0");
        }
        return lu.solve(rhs).transpose();
    }
    return normal.ldlt().solve(rhs).transpose();
}

RidgePropagator fit_ridge(const Dataset& dataset, double regularization) {
    if (dataset.sample_count() == 0) {
        throw std::invalid_argument("dataset has no samples");
    }
    const std::size_t rows = dataset.config.rows;
    const std::size_t cols = dataset.config.cols;
    const Standardizer stats =
        dataset.stats.stddev > 0.0 ? dataset.stats : fit_standardizer(dataset);

    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> targets;
    inputs.reserve(dataset.sample_count());
    targets.reserve(dataset.sample_count());
    for (const Batch& batch : dataset.batches) {
        for (const Sample& sample : batch.samples) {
            std::vector<double> in = sample.input.interior();
            std::vector<double> out = sample.target.interior();
            for (double& v : in) v = stats.transform(v);
            for (double& v : out) v = stats.transform(v);
            inputs.push_back(std::move(in));
            targets.push_back(std::move(out));
        }
    }
    Eigen::MatrixXd weights = fit_ridge_weights(inputs, targets, regularization);
    return RidgePropagator(std::move(weights), stats, rows, cols,
                           dataset.config.prediction_step, regularization);
}

namespace {

Field matrix_as_field(const Eigen::MatrixXd& m) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            values.push_back(m(i, j));
        }
    }
    return Field(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                 std::move(values));
}

Eigen::MatrixXd field_as_matrix(const Field& f) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(f.rows()), static_cast<Eigen::Index>(f.cols()));
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(i, j);
        }
    }
    return m;
}

nlohmann::json boundary_json(const BoundarySpec& b) {
    return nlohmann::json::array({b.top, b.bottom, b.left, b.right});
}

BoundarySpec boundary_from_json(const nlohmann::json& j) {
    BoundarySpec b;
    b.top = j.at(0).get<double>();
    b.bottom = j.at(1).get<double>();
    b.left = j.at(2).get<double>();
    b.right = j.at(3).get<double>();
    return b;
}

HeatProblem problem_from_manifest(const nlohmann::json& m) {
    return HeatProblem(m.at("rows").get<std::size_t>(), m.at("cols").get<std::size_t>(),
                       boundary_from_json(m.at("bc")), m.at("ic").get<double>(),
                       m.at("lambda").get<double>());
}

}  // namespace

std::vector<std::uint8_t> propagator_to_bytes(const Propagator& propagator) {
    nlohmann::json manifest;
    manifest["version"] = kPropagatorVersion;
    manifest["kind"] = propagator.kind();
    manifest["prediction_step"] = propagator.prediction_step();
    manifest["rows"] = propagator.rows();
    manifest["cols"] = propagator.cols();
    std::vector<std::uint8_t> payload;

    if (const auto* p = dynamic_cast<const NumericalHeatPropagator*>(&propagator)) {
        manifest["lambda"] = p->problem().lambda();
        manifest["bc"] = boundary_json(p->problem().boundary());
        manifest["ic"] = p->problem().initial_value();
    } else if (const auto* p = dynamic_cast<const NumericalBurgersPropagator*>(&propagator)) {
        manifest["dt"] = p->dt();
        manifest["dx"] = p->dx();
    } else if (const auto* p = dynamic_cast<const AffinePropagator*>(&propagator)) {
        manifest["lambda"] = p->problem().lambda();
        manifest["bc"] = boundary_json(p->problem().boundary());
        manifest["ic"] = p->problem().initial_value();
        matrix_as_field(p->matrix()).append_bytes(payload);
        matrix_as_field(p->offset()).append_bytes(payload);
    } else if (const auto* p = dynamic_cast<const RidgePropagator*>(&propagator)) {
        manifest["mean"] = p->stats().mean;
        manifest["stddev"] = p->stats().stddev;
        manifest["regularization"] = p->regularization();
        matrix_as_field(p->weights()).append_bytes(payload);
    } else {
        throw std::invalid_argument("propagator kind " + propagator.kind() +
                                    " is not serializable");
    }
    return container_to_bytes(std::move(manifest), std::move(payload));
}

std::unique_ptr<Propagator> propagator_from_bytes(const std::vector<std::uint8_t>& bytes) {
    const Container container = container_from_bytes(bytes, kPropagatorVersion);
    const nlohmann::json& m = container.manifest;
    try {
        const auto kind = m.at("kind").get<std::string>();
        const auto prediction_step = m.at("prediction_step").get<std::size_t>();
        const auto rows = m.at("rows").get<std::size_t>();
        const auto cols = m.at("cols").get<std::size_t>();

        if (kind == "numerical-heat") {
            return std::make_unique<NumericalHeatPropagator>(problem_from_manifest(m),
                                                             prediction_step);
        }
        if (kind == "numerical-burgers") {
            return std::make_unique<NumericalBurgersPropagator>(
                rows, m.at("dt").get<double>(), m.at("dx").get<double>(), prediction_step);
        }
        // Weight payloads scale with d^2; check sizes in 128 bits so absurd
        // manifest shapes mismatch instead of wrapping around.
        using u128 = unsigned __int128;
        if ((kind == "affine" || kind == "ridge") && (rows < 3 || cols < 3)) {
            throw MalformedHeaderError("grid too small for interior weights");
        }
        const u128 d128 = (kind == "affine" || kind == "ridge")
                              ? static_cast<u128>(rows - 2) * (cols - 2)
                              : 0;
        if (kind == "affine") {
            if (static_cast<u128>(container.payload.size()) != d128 * d128 * 8 + d128 * 8) {
                throw MalformedHeaderError("affine payload size does not match shape");
            }
            const std::size_t d = (rows - 2) * (cols - 2);
            const std::size_t matrix_bytes = d * d * 8;
            std::span<const std::uint8_t> cursor(container.payload);
            const Field mf = Field::from_bytes(cursor, d, d);
            const Field bf = Field::from_bytes(cursor.subspan(matrix_bytes), d, 1);
            return std::make_unique<AffinePropagator>(field_as_matrix(mf),
                                                      field_as_matrix(bf).col(0),
                                                      problem_from_manifest(m), prediction_step);
        }
        if (kind == "ridge") {
            if (static_cast<u128>(container.payload.size()) != d128 * (d128 + 1) * 8) {
                throw MalformedHeaderError("ridge payload size does not match shape");
            }
            const std::size_t d = (rows - 2) * (cols - 2);
            const Field wf = Field::from_bytes(container.payload, d, d + 1);
            Standardizer stats{m.at("mean").get<double>(), m.at("stddev").get<double>()};
            return std::make_unique<RidgePropagator>(field_as_matrix(wf), stats, rows, cols,
                                                     prediction_step,
                                                     m.at("regularization").get<double>());
        }
        throw MalformedHeaderError("unknown propagator kind " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedHeaderError(std::string("bad manifest field: ") + e.what());
    }
}

void save_propagator(const Propagator& propagator, const std::string& path) {
    write_file_bytes(path, propagator_to_bytes(propagator));
}

std::unique_ptr<Propagator> load_propagator(const std::string& path) {
    return propagator_from_bytes(read_file_bytes(path));
}

}  // namespace pdechunk
