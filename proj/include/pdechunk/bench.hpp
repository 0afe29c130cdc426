#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdechunk/problem.hpp"
#include "pdechunk/propagator.hpp"

namespace pdechunk {

/// One timing comparison between sequential numerical stepping and the
/// propagator route over the same step span. Times are medians over the
/// repetitions, with one warm-up run discarded; the ratio is
/// numerical_seconds / propagator_seconds. The endpoint MAE compares the two
/// final states.
struct BenchRecord {
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    std::size_t steps = 0;
    std::size_t prediction_step = 0;
    std::size_t repetitions = 0;
    double numerical_seconds = 0.0;
    double propagator_seconds = 0.0;
    double ratio = 0.0;
    double endpoint_mae = 0.0;
};

/// Fixed 9-column schema shared by all bench output.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& record);

/// Times `steps` sequential numerical steps against steps/P recursive
/// propagator advances from the same start state; steps must be a multiple
/// of P. Throws TimerResolutionError when a median lands under 1 microsecond.
BenchRecord bench_run(const HeatProblem& problem, std::size_t steps,
                      const Propagator& propagator, std::size_t repetitions);

/// The single-chunk comparison with steps = P: the propagator reaches the
/// target step in one prediction while the numerical solver iterates P times.
BenchRecord bench_single_chunk(const HeatProblem& problem, std::size_t prediction_step,
                               const Propagator& propagator, std::size_t repetitions);

using PropagatorFactory =
    std::function<std::unique_ptr<Propagator>(const HeatProblem&, std::size_t)>;

/// One record per (grid, steps) combination; grids are square.
std::vector<BenchRecord> bench_sweep(const std::vector<std::size_t>& grid_sizes,
                                     const std::vector<std::size_t>& steps_list,
                                     std::size_t prediction_step,
                                     const PropagatorFactory& make_propagator,
                                     const std::function<HeatProblem(std::size_t)>& make_problem,
                                     std::size_t repetitions);

}  // namespace pdechunk
