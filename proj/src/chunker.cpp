#include "pdechunk/chunker.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pdechunk/adi.hpp"
#include "pdechunk/errors.hpp"
#include "pdechunk/metrics.hpp"

namespace pdechunk {

ChunkPlan plan_chunks(std::size_t final_index, std::size_t prediction_step) {
    if (prediction_step < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
    ChunkPlan plan;
    plan.final_index = final_index;
    plan.prediction_step = prediction_step;
    plan.chunks.resize(prediction_step);
    for (std::size_t k = 0; k < prediction_step; ++k) {
        for (std::size_t t = k; t <= final_index; t += prediction_step) {
            plan.chunks[k].push_back(t);
        }
    }
    return plan;
}

std::vector<Field> seed_states(const HeatProblem& problem, std::size_t prediction_step) {
    if (prediction_step < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
    const Trajectory t = heat_solve_2d(problem, prediction_step - 1);
    std::vector<Field> seeds;
    seeds.reserve(prediction_step);
    for (std::size_t i = 0; i < t.size(); ++i) {
        seeds.push_back(t.state(i));
    }
    return seeds;
}

std::vector<Field> seed_states(const BurgersProblem& problem, std::size_t prediction_step) {
    if (prediction_step < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
    const Trajectory t = burgers_solve_1d(problem, prediction_step - 1);
    std::vector<Field> seeds;
    seeds.reserve(prediction_step);
    for (std::size_t i = 0; i < t.size(); ++i) {
        seeds.push_back(t.state(i));
    }
    return seeds;
}

std::vector<Field> approximate_seed_states(const Field& initial_state,
                                           std::size_t prediction_step) {
    if (prediction_step < 1) {
        throw std::invalid_argument("prediction step must be at least 1");
    }
    return std::vector<Field>(prediction_step, initial_state);
}

std::vector<ChunkRun> run_chunks(const ChunkPlan& plan, const std::vector<Field>& seeds,
                                 const Propagator& propagator, std::size_t workers) {
    if (seeds.size() != plan.prediction_step) {
        throw std::invalid_argument("need exactly one seed per chunk");
    }
    if (propagator.prediction_step() != plan.prediction_step) {
        throw std::invalid_argument("propagator prediction step does not match plan");
    }

    const std::size_t n_chunks = plan.chunks.size();
    std::vector<ChunkRun> runs(n_chunks);
    std::vector<std::string> failures(n_chunks);

    auto execute = [&](std::size_t k) {
        ChunkRun& run = runs[k];
        run.chunk_index = k;
        run.indices = plan.chunks[k];
        if (run.indices.empty()) return;
        run.states.reserve(run.indices.size());
        run.states.push_back(seeds[k]);
        for (std::size_t step = 1; step < run.indices.size(); ++step) {
            run.states.push_back(propagator.advance(run.states.back()));
            ++run.recursion_count;
        }
    };

    if (workers <= 1 || n_chunks <= 1) {
        for (std::size_t k = 0; k < n_chunks; ++k) {
            try {
                execute(k);
            } catch (const std::exception& e) {
                failures[k] = e.what();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next.fetch_add(1); k < n_chunks; k = next.fetch_add(1)) {
                try {
                    execute(k);
                } catch (const std::exception& e) {
                    failures[k] = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        const std::size_t n = std::min(workers, n_chunks);
        pool.reserve(n);
        for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t k = 0; k < n_chunks; ++k) {
        if (!failures[k].empty()) {
            throw std::runtime_error("chunk " + std::to_string(k) + " failed: " + failures[k]);
        }
    }
    return runs;
}

Trajectory recombine(const std::vector<ChunkRun>& runs) {
    std::size_t max_index = 0;
    std::size_t total = 0;
    std::map<std::size_t, const Field*> by_index;
    for (const ChunkRun& run : runs) {
        if (run.indices.size() != run.states.size()) {
            throw MalformedRunError("chunk " + std::to_string(run.chunk_index) +
                                    " has mismatched indices and states");
        }
        for (std::size_t i = 0; i < run.indices.size(); ++i) {
            const std::size_t t = run.indices[i];
            if (!by_index.emplace(t, &run.states[i]).second) {
                throw MalformedRunError("duplicate time index " + std::to_string(t));
            }
            max_index = std::max(max_index, t);
            ++total;
        }
    }
    if (total == 0) {
        throw MalformedRunError("no states to recombine");
    }
    if (total != max_index + 1) {
        std::ostringstream missing;
        std::size_t shown = 0;
        for (std::size_t t = 0; t <= max_index && shown < 16; ++t) {
            if (!by_index.count(t)) {
                missing << (shown ? "," : "") << t;
                ++shown;
            }
        }
        throw MalformedRunError("missing time indices: " + missing.str());
    }
    Trajectory trajectory;
    for (const auto& [t, state] : by_index) {
        trajectory.push_back(t, *state);
    }
    return trajectory;
}

ChunkErrorReport chunk_error_report(const std::vector<ChunkRun>& runs,
                                    const Trajectory& reference) {
    ChunkErrorReport report;
    report.chunk_mse.resize(runs.size(), 0.0);
    report.chunk_mae.resize(runs.size(), 0.0);
    report.chunk_states.resize(runs.size(), 0);

    // The full-solution errors are accumulated in one flat pass, not from the
    // per-chunk aggregates.
    double full_se = 0.0;
    double full_ae = 0.0;
    std::size_t full_n = 0;

    for (std::size_t k = 0; k < runs.size(); ++k) {
        const ChunkRun& run = runs[k];
        double se = 0.0;
        double ae = 0.0;
        for (std::size_t i = 0; i < run.indices.size(); ++i) {
            if (!reference.has_index(run.indices[i])) {
                throw MalformedRunError("reference has no state at index " +
                                        std::to_string(run.indices[i]));
            }
            const Field& ref = reference.state_at(run.indices[i]);
            se += mse(run.states[i], ref);
            ae += mae(run.states[i], ref);
        }
        report.chunk_states[k] = run.indices.size();
        if (!run.indices.empty()) {
            report.chunk_mse[k] = se / static_cast<double>(run.indices.size());
            report.chunk_mae[k] = ae / static_cast<double>(run.indices.size());
        }
        for (std::size_t i = 0; i < run.indices.size(); ++i) {
            const Field& ref = reference.state_at(run.indices[i]);
            full_se += mse(run.states[i], ref);
            full_ae += mae(run.states[i], ref);
            ++full_n;
        }
    }
    if (full_n > 0) {
        report.full_mse = full_se / static_cast<double>(full_n);
        report.full_mae = full_ae / static_cast<double>(full_n);
    }
    return report;
}

}  // namespace pdechunk
