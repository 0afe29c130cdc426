#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "pdechunk/adi.hpp"
#include "pdechunk/burgers.hpp"
#include "pdechunk/chunker.hpp"
#include "pdechunk/datagen.hpp"
#include "pdechunk/dataset_io.hpp"
#include "pdechunk/heat1d.hpp"
#include "pdechunk/laplace.hpp"
#include "pdechunk/metrics.hpp"
#include "pdechunk/propagator.hpp"
#include "pdechunk/tridiagonal.hpp"
#include "pdechunk/verify.hpp"

namespace py = pybind11;
using namespace pdechunk;

namespace {

Field array_to_field(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() == 1) {
        std::vector<double> values(arr.data(), arr.data() + arr.shape(0));
        return Field(static_cast<std::size_t>(arr.shape(0)), 1, std::move(values));
    }
    if (arr.ndim() != 2) {
        throw std::invalid_argument("expected a 1D or 2D array");
    }
    std::vector<double> values(arr.data(), arr.data() + arr.size());
    return Field(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)),
                 std::move(values));
}

py::array_t<double> field_to_array(const Field& f) {
    py::array_t<double> arr({f.rows(), f.cols()});
    std::copy(f.values().begin(), f.values().end(), arr.mutable_data());
    return arr;
}

py::array_t<double> vector_to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::pair<std::vector<std::size_t>, py::array_t<double>> trajectory_to_python(
    const Trajectory& t) {
    if (t.empty()) {
        return {{}, py::array_t<double>()};
    }
    const std::size_t rows = t.state(0).rows();
    const std::size_t cols = t.state(0).cols();
    py::array_t<double> states({t.size(), rows, cols});
    double* out = states.mutable_data();
    for (std::size_t s = 0; s < t.size(); ++s) {
        std::copy(t.state(s).values().begin(), t.state(s).values().end(),
                  out + s * rows * cols);
    }
    return {t.indices(), states};
}

struct PropagatorHandle {
    std::shared_ptr<Propagator> ptr;

    py::array_t<double> advance(
        const py::array_t<double, py::array::c_style | py::array::forcecast>& state) const {
        return field_to_array(ptr->advance(array_to_field(state)));
    }
};

BoundarySpec make_boundary(double top, double bottom, double left, double right) {
    BoundarySpec bc;
    bc.top = top;
    bc.bottom = bottom;
    bc.left = left;
    bc.right = right;
    return bc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-difference PDE solvers with chunked parallel-in-time acceleration";

    py::class_<BoundarySpec>(m, "BoundarySpec")
        .def(py::init(&make_boundary), py::arg("top"), py::arg("bottom"), py::arg("left"),
             py::arg("right"))
        .def_readwrite("top", &BoundarySpec::top)
        .def_readwrite("bottom", &BoundarySpec::bottom)
        .def_readwrite("left", &BoundarySpec::left)
        .def_readwrite("right", &BoundarySpec::right);

    py::class_<HeatProblem>(m, "HeatProblem")
        .def(py::init<std::size_t, std::size_t, BoundarySpec, double, double>(),
             py::arg("rows"), py::arg("cols"), py::arg("boundary"), py::arg("initial_value"),
             py::arg("lam"))
        .def_property_readonly("rows", &HeatProblem::rows)
        .def_property_readonly("cols", &HeatProblem::cols)
        .def_property_readonly("lam", &HeatProblem::lambda)
        .def("initial_state",
             [](const HeatProblem& p) { return field_to_array(p.initial_state()); });

    py::class_<PropagatorHandle>(m, "Propagator")
        .def("advance", &PropagatorHandle::advance, py::arg("state"))
        .def_property_readonly("prediction_step",
                               [](const PropagatorHandle& h) { return h.ptr->prediction_step(); })
        .def_property_readonly("kind", [](const PropagatorHandle& h) { return h.ptr->kind(); });

    m.def("apply_dirichlet",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f,
             const BoundarySpec& bc) { return field_to_array(apply_dirichlet(array_to_field(f), bc)); },
          py::arg("field"), py::arg("boundary"));

    m.def("thomas_solve",
          [](std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
             std::vector<double> rhs) {
              TridiagonalSystem sys{std::move(lower), std::move(diag), std::move(upper),
                                    std::move(rhs)};
              return vector_to_array(thomas_solve(sys));
          },
          py::arg("lower"), py::arg("diag"), py::arg("upper"), py::arg("rhs"));

    m.def("explicit_step",
          [](std::vector<double> interior, double left, double right, double lam) {
              auto result = explicit_step_1d(interior, left, right, lam);
              return py::make_tuple(vector_to_array(result.values), result.stability_warning);
          },
          py::arg("interior"), py::arg("left"), py::arg("right"), py::arg("lam"));

    m.def("implicit_step",
          [](std::vector<double> interior, double left, double right, double lam) {
              return vector_to_array(implicit_step_1d(interior, left, right, lam));
          },
          py::arg("interior"), py::arg("left"), py::arg("right"), py::arg("lam"));

    m.def("crank_nicolson_step",
          [](std::vector<double> interior, double left_now, double left_next, double right_now,
             double right_next, double lam) {
              return vector_to_array(crank_nicolson_step_1d(interior, left_now, left_next,
                                                            right_now, right_next, lam));
          },
          py::arg("interior"), py::arg("left_now"), py::arg("left_next"), py::arg("right_now"),
          py::arg("right_next"), py::arg("lam"));

    m.def("adi_step",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& state,
             const BoundarySpec& bc, double lam) {
              return field_to_array(adi_step_2d(array_to_field(state), bc, lam));
          },
          py::arg("state"), py::arg("boundary"), py::arg("lam"));

    m.def("heat_solve",
          [](const HeatProblem& problem, std::size_t steps) {
              return trajectory_to_python(heat_solve_2d(problem, steps));
          },
          py::arg("problem"), py::arg("steps"),
          "Returns (time_indices, states) with states shaped (steps+1, rows, cols).");

    m.def("heat_final_state",
          [](const HeatProblem& problem, std::size_t steps) {
              return field_to_array(heat_final_state_2d(problem, steps));
          },
          py::arg("problem"), py::arg("steps"),
          "Final state only; does not store the trajectory.");

    m.def("burgers_step",
          [](std::vector<double> u, double dt, double dx) {
              return vector_to_array(burgers_step_1d(u, dt, dx));
          },
          py::arg("u"), py::arg("dt"), py::arg("dx"));

    m.def("laplace_solve",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& boundary,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& mask,
             double tol, std::size_t max_iters) {
              const LaplaceResult result =
                  laplace_solve_2d(array_to_field(boundary), array_to_field(mask), tol, max_iters);
              return py::make_tuple(field_to_array(result.field), result.converged,
                                    result.iterations);
          },
          py::arg("boundary_field"), py::arg("mask"), py::arg("tol") = 1e-8,
          py::arg("max_iters") = 1000000);

    m.def("plan_chunks",
          [](std::size_t final_index, std::size_t prediction_step) {
              return plan_chunks(final_index, prediction_step).chunks;
          },
          py::arg("final_index"), py::arg("prediction_step"));

    m.def("numerical_propagator",
          [](const HeatProblem& problem, std::size_t prediction_step) {
              return PropagatorHandle{
                  std::make_shared<NumericalHeatPropagator>(problem, prediction_step)};
          },
          py::arg("problem"), py::arg("prediction_step"));

    m.def("probe_affine",
          [](const HeatProblem& problem, std::size_t prediction_step, std::size_t threads) {
              return PropagatorHandle{std::make_shared<AffinePropagator>(
                  probe_affine(problem, prediction_step, threads))};
          },
          py::arg("problem"), py::arg("prediction_step"), py::arg("threads") = 1);

    m.def("fit_ridge",
          [](const std::string& dataset_path, double regularization) {
              const Dataset dataset = read_dataset(dataset_path);
              return PropagatorHandle{
                  std::make_shared<RidgePropagator>(fit_ridge(dataset, regularization))};
          },
          py::arg("dataset_path"), py::arg("regularization"));

    m.def("save_propagator",
          [](const PropagatorHandle& handle, const std::string& path) {
              save_propagator(*handle.ptr, path);
          },
          py::arg("propagator"), py::arg("path"));

    m.def("load_propagator",
          [](const std::string& path) {
              return PropagatorHandle{std::shared_ptr<Propagator>(load_propagator(path))};
          },
          py::arg("path"));

    m.def("chunk_run",
          [](const HeatProblem& problem, std::size_t final_index,
             const PropagatorHandle& propagator, std::size_t threads) {
              const std::size_t p = propagator.ptr->prediction_step();
              const ChunkPlan plan = plan_chunks(final_index, p);
              const auto runs =
                  run_chunks(plan, seed_states(problem, p), *propagator.ptr, threads);
              return trajectory_to_python(recombine(runs));
          },
          py::arg("problem"), py::arg("final_index"), py::arg("propagator"),
          py::arg("threads") = 1,
          "Chunked solve: plan, seed, run in parallel, recombine.");

    m.def("chunk_error_report",
          [](const HeatProblem& problem, std::size_t final_index,
             const PropagatorHandle& propagator, std::size_t threads) {
              const std::size_t p = propagator.ptr->prediction_step();
              const ChunkPlan plan = plan_chunks(final_index, p);
              const auto runs =
                  run_chunks(plan, seed_states(problem, p), *propagator.ptr, threads);
              const Trajectory reference = heat_solve_2d(problem, final_index);
              const ChunkErrorReport report = chunk_error_report(runs, reference);
              py::dict out;
              out["chunk_mse"] = report.chunk_mse;
              out["chunk_mae"] = report.chunk_mae;
              out["chunk_states"] = report.chunk_states;
              out["full_mse"] = report.full_mse;
              out["full_mae"] = report.full_mae;
              return out;
          },
          py::arg("problem"), py::arg("final_index"), py::arg("propagator"),
          py::arg("threads") = 1,
          "Per-chunk and full-solution MSE/MAE against the sequential solve.");

    m.def("generate_dataset",
          [](const std::string& path, std::size_t rows, std::size_t cols,
             std::size_t prediction_step, std::size_t batches, std::size_t batch_size,
             std::uint64_t seed, std::pair<double, double> bc_ic_range,
             std::pair<double, double> lambda_range,
             std::pair<std::uint64_t, std::uint64_t> t_range, std::size_t threads) {
              GenConfig config;
              config.rows = rows;
              config.cols = cols;
              config.prediction_step = prediction_step;
              config.batches = batches;
              config.batch_size = batch_size;
              config.seed = seed;
              config.bc_ic_range = {bc_ic_range.first, bc_ic_range.second};
              config.lambda_range = {lambda_range.first, lambda_range.second};
              config.t_range = {t_range.first, t_range.second};
              const Dataset dataset = generate_dataset(config, threads);
              write_dataset(dataset, path);
              return dataset.sample_count();
          },
          py::arg("path"), py::arg("rows") = 12, py::arg("cols") = 12,
          py::arg("prediction_step") = 10, py::arg("batches") = 1, py::arg("batch_size") = 32,
          py::arg("seed") = 0, py::arg("bc_ic_range") = std::pair<double, double>(0.0, 100.0),
          py::arg("lambda_range") = std::pair<double, double>(0.0, 1.0),
          py::arg("t_range") = std::pair<std::uint64_t, std::uint64_t>(0, 1000),
          py::arg("threads") = 1);

    m.def("mae",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
              return mae(array_to_field(a), array_to_field(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("mse",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
              return mse(array_to_field(a), array_to_field(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("verify",
          []() {
              std::ostringstream out;
              const int failures = run_verification(out);
              return py::make_tuple(failures, out.str());
          },
          "Run the oracle equivalence suite; returns (failures, report).");
}
