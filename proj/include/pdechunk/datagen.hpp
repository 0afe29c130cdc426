#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "pdechunk/field.hpp"
#include "pdechunk/problem.hpp"

namespace pdechunk {

/// Ranges and sizes for randomized dataset generation. Ranges are
/// configuration, not hard-coded bounds.
struct GenConfig {
    std::array<double, 2> bc_ic_range{0.0, 100.0};
    std::array<double, 2> lambda_range{0.0, 1.0};
    std::array<std::uint64_t, 2> t_range{0, 1000};
    std::size_t prediction_step = 10;
    std::size_t batches = 1;
    std::size_t batch_size = 32;
    std::size_t rows = 12;
    std::size_t cols = 12;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One random draw of the six problem variables.
struct PermutationSample {
    double bc1 = 0.0;  // top
    double bc2 = 0.0;  // bottom
    double bc3 = 0.0;  // left
    double bc4 = 0.0;  // right
    double ic = 0.0;
    double lambda = 0.0;

    HeatProblem to_problem(std::size_t rows, std::size_t cols) const;
};

/// Scalar standardization: transform x -> (x - mean) / stddev.
struct Standardizer {
    double mean = 0.0;
    double stddev = 1.0;

    double transform(double x) const { return (x - mean) / stddev; }
    double inverse(double x) const { return mean + stddev * x; }
    Field transform(const Field& f) const;
    Field inverse(const Field& f) const;
};

struct Sample {
    Field input;
    Field target;
};

/// All samples in a batch share the same (t0, t1 = t0 + P) pair.
struct Batch {
    std::uint64_t t0 = 0;
    std::uint64_t t1 = 0;
    std::vector<Sample> samples;
};

struct Dataset {
    GenConfig config;
    std::vector<Batch> batches;
    Standardizer stats;

    std::size_t sample_count() const;
};

/// Six independent uniform draws in the configured order:
/// bc1, bc2, bc3, bc4, ic from bc_ic_range, then lambda from lambda_range.
PermutationSample generate_random_permutation(const GenConfig& config, std::mt19937_64& engine);

/// Batched trajectory sampling: every batch draws one random start step t0,
/// then batch_size random permutations, each solved to t0 + P; the stored
/// pair is (X(t0), X(t0+P)). The per-batch/per-sample RNG substreams make the
/// result independent of generation order, so `threads` never changes bytes.
Dataset generate_dataset(const GenConfig& config, std::size_t threads = 1);

/// The deterministic draws behind batch k and its sample j: any stored
/// sample can be regenerated exactly from (config, k, j) alone.
std::uint64_t start_step_for(const GenConfig& config, std::size_t batch);
PermutationSample permutation_for(const GenConfig& config, std::size_t batch,
                                  std::size_t sample);

/// Mean and population standard deviation over all input and target values
/// jointly. Throws std::domain_error when the data is constant (sigma = 0).
Standardizer fit_standardizer(const Dataset& dataset);

Field standardize(const Field& field, const Standardizer& stats);
Field destandardize(const Field& field, const Standardizer& stats);

}  // namespace pdechunk
