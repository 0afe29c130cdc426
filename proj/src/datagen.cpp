#include "pdechunk/datagen.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pdechunk/adi.hpp"
#include "pdechunk/rng.hpp"

namespace pdechunk {

void GenConfig::validate() const {
    if (bc_ic_range[0] > bc_ic_range[1] || lambda_range[0] > lambda_range[1] ||
        t_range[0] > t_range[1]) {
        throw std::invalid_argument("generation ranges must satisfy lo <= hi");
    }
    if (!std::isfinite(bc_ic_range[0]) || !std::isfinite(bc_ic_range[1]) ||
        !std::isfinite(lambda_range[0]) || !std::isfinite(lambda_range[1])) {
        throw std::invalid_argument("generation ranges must be finite");
    }
    if (lambda_range[0] < 0.0) {
        throw std::invalid_argument("lambda range must be nonnegative");
    }
    if (prediction_step < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("batch size must be at least 1");
    }
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("grid must be at least 3x3");
    }
}

HeatProblem PermutationSample::to_problem(std::size_t rows, std::size_t cols) const {
    BoundarySpec boundary;
    boundary.top = bc1;
    boundary.bottom = bc2;
    boundary.left = bc3;
    boundary.right = bc4;
    return HeatProblem(rows, cols, boundary, ic, lambda);
}

Field Standardizer::transform(const Field& f) const {
    Field out = f;
    for (double& v : out.values()) v = transform(v);
    return out;
}

Field Standardizer::inverse(const Field& f) const {
    Field out = f;
    for (double& v : out.values()) v = inverse(v);
    return out;
}

std::size_t Dataset::sample_count() const {
    std::size_t n = 0;
    for (const Batch& b : batches) n += b.samples.size();
    return n;
}

PermutationSample generate_random_permutation(const GenConfig& config, std::mt19937_64& engine) {
    config.validate();
    PermutationSample s;
    s.bc1 = draw_uniform(engine, config.bc_ic_range[0], config.bc_ic_range[1]);
    s.bc2 = draw_uniform(engine, config.bc_ic_range[0], config.bc_ic_range[1]);
    s.bc3 = draw_uniform(engine, config.bc_ic_range[0], config.bc_ic_range[1]);
    s.bc4 = draw_uniform(engine, config.bc_ic_range[0], config.bc_ic_range[1]);
    s.ic = draw_uniform(engine, config.bc_ic_range[0], config.bc_ic_range[1]);
    s.lambda = draw_uniform(engine, config.lambda_range[0], config.lambda_range[1]);
    return s;
}

// Substream tags within a batch: 0 draws t0, sample j uses tag j + 1.
std::uint64_t start_step_for(const GenConfig& config, std::size_t batch) {
    auto engine = make_engine(substream(substream(config.seed, batch), 0));
    return draw_index(engine, config.t_range[0], config.t_range[1]);
}

PermutationSample permutation_for(const GenConfig& config, std::size_t batch,
                                  std::size_t sample) {
    auto engine = make_engine(substream(substream(config.seed, batch), sample + 1));
    return generate_random_permutation(config, engine);
}

namespace {

Batch generate_batch(const GenConfig& config, std::size_t batch_index) {
    Batch batch;
    batch.t0 = start_step_for(config, batch_index);
    batch.t1 = batch.t0 + config.prediction_step;
    batch.samples.reserve(config.batch_size);
    for (std::size_t j = 0; j < config.batch_size; ++j) {
        const PermutationSample perm = permutation_for(config, batch_index, j);
        const HeatProblem problem = perm.to_problem(config.rows, config.cols);
        const Trajectory trajectory = heat_solve_2d(problem, batch.t1);
        batch.samples.push_back(Sample{trajectory.state_at(batch.t0), trajectory.state_at(batch.t1)});
    }
    return batch;
}

}  // namespace

Dataset generate_dataset(const GenConfig& config, std::size_t threads) {
    config.validate();
    Dataset dataset;
    dataset.config = config;
    dataset.batches.resize(config.batches);

    if (threads <= 1 || config.batches <= 1) {
        for (std::size_t k = 0; k < config.batches; ++k) {
            dataset.batches[k] = generate_batch(config, k);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next.fetch_add(1); k < config.batches; k = next.fetch_add(1)) {
                dataset.batches[k] = generate_batch(config, k);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t n = std::min(threads, config.batches);
        pool.reserve(n);
        for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (dataset.sample_count() > 0) {
        dataset.stats = fit_standardizer(dataset);
    }
    return dataset;
}

Standardizer fit_standardizer(const Dataset& dataset) {
    std::size_t n = 0;
    double sum = 0.0;
    for (const Batch& batch : dataset.batches) {
        for (const Sample& sample : batch.samples) {
            for (double v : sample.input.values()) sum += v;
            for (double v : sample.target.values()) sum += v;
            n += sample.input.size() + sample.target.size();
        }
    }
    if (n == 0) {
        throw std::invalid_argument("cannot fit a standardizer on an empty dataset");
    }
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const Batch& batch : dataset.batches) {
        for (const Sample& sample : batch.samples) {
            for (double v : sample.input.values()) sq += (v - mean) * (v - mean);
            for (double v : sample.target.values()) sq += (v - mean) * (v - mean);
        }
    }
    const double stddev = std::sqrt(sq / static_cast<double>(n));
    if (stddev == 0.0) {
        throw std::domain_error("dataset is constant; standard deviation is zero");
    }
    return Standardizer{mean, stddev};
}

Field standardize(const Field& field, const Standardizer& stats) {
    if (stats.stddev <= 0.0) {
        throw std::invalid_argument("standardizer requires positive stddev");
    }
    return stats.transform(field);
}

Field destandardize(const Field& field, const Standardizer& stats) {
    if (stats.stddev <= 0.0) {
        throw std::invalid_argument("standardizer requires positive stddev");
    }
    return stats.inverse(field);
}

}  // namespace pdechunk
