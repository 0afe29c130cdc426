#include "pdechunk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "pdechunk/adi.hpp"
#include "pdechunk/errors.hpp"
#include "pdechunk/metrics.hpp"

namespace pdechunk {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    return n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

template <typename F>
double timed_median(F&& body, std::size_t repetitions) {
    body();  // warm-up, discarded
    std::vector<double> seconds;
    seconds.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto start = Clock::now();
        body();
        seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    return median(std::move(seconds));
}

}  // namespace

std::string bench_csv_header() {
    return "grid_rows,grid_cols,steps,prediction_step,repetitions,"
           "numerical_seconds,propagator_seconds,ratio,endpoint_mae";
}

std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out.precision(17);
    out << r.grid_rows << ',' << r.grid_cols << ',' << r.steps << ',' << r.prediction_step
        << ',' << r.repetitions << ',' << r.numerical_seconds << ',' << r.propagator_seconds
        << ',' << r.ratio << ',' << r.endpoint_mae;
    return out.str();
}

BenchRecord bench_run(const HeatProblem& problem, std::size_t steps,
                      const Propagator& propagator, std::size_t repetitions) {
    if (repetitions < 3) {
        throw std::invalid_argument("at least 3 repetitions required");
    }
    const std::size_t p = propagator.prediction_step();
    if (steps == 0 || steps % p != 0) {
        throw std::invalid_argument("steps must be a positive multiple of the prediction step");
    }
    const std::size_t advances = steps / p;
    const Field start = problem.initial_state();

    Field numerical_end = start;
    const double numerical_seconds = timed_median(
        [&] {
            Field state = start;
            for (std::size_t s = 0; s < steps; ++s) {
                state = adi_step_2d(state, problem.boundary(), problem.lambda());
            }
            numerical_end = std::move(state);
        },
        repetitions);

    Field propagator_end = start;
    const double propagator_seconds = timed_median(
        [&] {
            Field state = start;
            for (std::size_t a = 0; a < advances; ++a) {
                state = propagator.advance(state);
            }
            propagator_end = std::move(state);
        },
        repetitions);

    if (numerical_seconds < 1e-6 || propagator_seconds < 1e-6) {
        throw TimerResolutionError(
            "median run time is below 1 microsecond; increase repetitions or problem size");
    }

    BenchRecord record;
    record.grid_rows = problem.rows();
    record.grid_cols = problem.cols();
    record.steps = steps;
    record.prediction_step = p;
    record.repetitions = repetitions;
    record.numerical_seconds = numerical_seconds;
    record.propagator_seconds = propagator_seconds;
    record.ratio = numerical_seconds / propagator_seconds;
    record.endpoint_mae = mae(numerical_end, propagator_end);
    return record;
}

BenchRecord bench_single_chunk(const HeatProblem& problem, std::size_t prediction_step,
                               const Propagator& propagator, std::size_t repetitions) {
    if (propagator.prediction_step() != prediction_step) {
        throw std::invalid_argument("propagator prediction step mismatch");
    }
    return bench_run(problem, prediction_step, propagator, repetitions);
}

std::vector<BenchRecord> bench_sweep(const std::vector<std::size_t>& grid_sizes,
                                     const std::vector<std::size_t>& steps_list,
                                     std::size_t prediction_step,
                                     const PropagatorFactory& make_propagator,
                                     const std::function<HeatProblem(std::size_t)>& make_problem,
                                     std::size_t repetitions) {
    if (grid_sizes.empty() || steps_list.empty()) {
        throw std::invalid_argument("grid and step lists must be non-empty");
    }
    std::vector<BenchRecord> records;
    records.reserve(grid_sizes.size() * steps_list.size());
    for (std::size_t grid : grid_sizes) {
        const HeatProblem problem = make_problem(grid);
        const auto propagator = make_propagator(problem, prediction_step);
        for (std::size_t steps : steps_list) {
            records.push_back(bench_run(problem, steps, *propagator, repetitions));
        }
    }
    return records;
}

}  // namespace pdechunk
