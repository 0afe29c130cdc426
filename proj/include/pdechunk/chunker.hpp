#pragma once

#include <cstddef>
#include <vector>

#include "pdechunk/burgers.hpp"
#include "pdechunk/problem.hpp"
#include "pdechunk/propagator.hpp"

namespace pdechunk {

/// Decomposition of time indices 0..L into P interleaved chunks: chunk k is
/// (k, k+P, k+2P, ...), together a partition of {0, ..., L}. Chunks with
/// k > L are empty.
struct ChunkPlan {
    std::size_t final_index = 0;      // L
    std::size_t prediction_step = 1;  // P
    std::vector<std::vector<std::size_t>> chunks;
};

ChunkPlan plan_chunks(std::size_t final_index, std::size_t prediction_step);

/// One chunk's execution record: the produced states at its plan indices.
/// recursion_count is the number of propagator applications, at most
/// floor(L / P).
struct ChunkRun {
    std::size_t chunk_index = 0;
    std::vector<std::size_t> indices;
    std::vector<Field> states;
    std::size_t recursion_count = 0;
};

/// Per-chunk and full-solution error accounting against a reference
/// trajectory. A state's error is its element mean; chunk values average over
/// the chunk's states, full values over all states.
struct ChunkErrorReport {
    std::vector<double> chunk_mse;
    std::vector<double> chunk_mae;
    std::vector<std::size_t> chunk_states;
    double full_mse = 0.0;
    double full_mae = 0.0;
};

/// First P states X(0..P-1) from sequential numerical stepping.
std::vector<Field> seed_states(const HeatProblem& problem, std::size_t prediction_step);
std::vector<Field> seed_states(const BurgersProblem& problem, std::size_t prediction_step);

/// Approximate propagator-only seeding for experimentation: every chunk
/// starts from the initial state, so chunk k carries a seed offset of k time
/// steps. Only chunk 0 reproduces its exact indices.
std::vector<Field> approximate_seed_states(const Field& initial_state,
                                           std::size_t prediction_step);

/// Runs every chunk independently: chunk k starts from seeds[k] and applies
/// the propagator repeatedly to fill its index sequence. Chunks are
/// distributed over `workers` threads; scheduling never affects the result.
/// A failing chunk aborts the run with the chunk identified.
std::vector<ChunkRun> run_chunks(const ChunkPlan& plan, const std::vector<Field>& seeds,
                                 const Propagator& propagator, std::size_t workers = 1);

/// Merges runs into the full 0..L trajectory; missing or duplicate indices
/// raise MalformedRunError naming them.
Trajectory recombine(const std::vector<ChunkRun>& runs);

ChunkErrorReport chunk_error_report(const std::vector<ChunkRun>& runs,
                                    const Trajectory& reference);

}  // namespace pdechunk
