// Acceptance suite: every check prints one [PASS]/[FAIL] line and the
// process exits nonzero when any check fails. Tolerances are fixed here, not
// configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "pdechunk/adi.hpp"
#include "pdechunk/burgers.hpp"
#include "pdechunk/chunker.hpp"
#include "pdechunk/datagen.hpp"
#include "pdechunk/dataset_io.hpp"
#include "pdechunk/errors.hpp"
#include "pdechunk/heat1d.hpp"
#include "pdechunk/laplace.hpp"
#include "pdechunk/metrics.hpp"
#include "pdechunk/propagator.hpp"
#include "pdechunk/rng.hpp"

using namespace pdechunk;

namespace {

struct Criterion {
    std::string name;
    double time_budget_seconds;  // 0 = unbudgeted
    std::function<void()> body;
};

void require(bool condition, const std::string& detail) {
    if (!condition) {
        throw std::runtime_error(detail);
    }
}

HeatProblem figure_problem(std::size_t grid) {
    BoundarySpec bc;
    bc.top = 600.0;
    bc.bottom = 500.0;
    bc.left = 194.0;
    bc.right = 248.0;
    return HeatProblem(grid, grid, bc, 254.0, 0.27047);
}

double max_abs_diff(const Field& a, const Field& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst;
}

// 1. Chunked execution with the numerical propagator recombines to the
//    sequential ADI trajectory bitwise.
void chunker_identity() {
    const HeatProblem problem = figure_problem(12);
    const std::size_t final_index = 100;
    const std::size_t p = 10;
    const Trajectory reference = heat_solve_2d(problem, final_index);
    const ChunkPlan plan = plan_chunks(final_index, p);
    const NumericalHeatPropagator propagator(problem, p);
    const auto runs = run_chunks(plan, seed_states(problem, p), propagator, 4);
    const Trajectory combined = recombine(runs);
    require(combined.size() == reference.size(), "state count differs");
    for (std::size_t s = 0; s < combined.size(); ++s) {
        require(combined.index(s) == reference.index(s), "time index differs");
        require(combined.state(s) == reference.state(s),
                "state " + std::to_string(combined.index(s)) + " is not bitwise identical");
    }
}

// 2. Probed affine propagator matches the numerical P-step map to 1e-9 over
//    100 random interior states, grids up to 24x24, P in {10, 100}.
void affine_oracle() {
    auto engine = make_engine(substream(2024, 2));
    for (const std::size_t grid : {12u, 24u}) {
        const HeatProblem problem = figure_problem(grid);
        for (const std::size_t p : {10u, 100u}) {
            const NumericalHeatPropagator numerical(problem, p);
            const AffinePropagator affine = probe_affine(problem, p, 8);
            for (int trial = 0; trial < 100; ++trial) {
                Field state = problem.initial_state();
                std::vector<double> interior(problem.interior_count());
                for (double& v : interior) v = draw_uniform(engine, 0.0, 600.0);
                state.set_interior(interior);
                const double diff = max_abs_diff(numerical.advance(state), affine.advance(state));
                require(diff < 1e-9, "grid " + std::to_string(grid) + " P " + std::to_string(p) +
                                         " diff " + std::to_string(diff));
            }
        }
    }
}

// 3. Ridge propagator fit on a single-permutation dataset with >= d+1
//    samples and reg = 1e-10 reaches MAE < 1e-5 against numerical targets.
void ridge_recoverability() {
    BoundarySpec bc;
    bc.top = 100.0;
    bc.bottom = 40.0;
    bc.left = 60.0;
    bc.right = 20.0;
    const HeatProblem problem(8, 8, bc, 0.0, 0.05);
    const std::size_t p = 10;
    const std::size_t d = problem.interior_count();
    const std::size_t samples = d + 24;
    const std::size_t stride = 2;

    Dataset dataset;
    dataset.config.rows = problem.rows();
    dataset.config.cols = problem.cols();
    dataset.config.prediction_step = p;
    dataset.config.batches = samples;
    dataset.config.batch_size = 1;
    const Trajectory t = heat_solve_2d(problem, (samples - 1) * stride + p);
    for (std::size_t s = 0; s < samples; ++s) {
        Batch batch;
        batch.t0 = s * stride;
        batch.t1 = batch.t0 + p;
        batch.samples.push_back(Sample{t.state_at(batch.t0), t.state_at(batch.t1)});
        dataset.batches.push_back(std::move(batch));
    }
    dataset.stats = fit_standardizer(dataset);

    const RidgePropagator ridge = fit_ridge(dataset, 1e-10);
    double mae_sum = 0.0;
    for (const Batch& batch : dataset.batches) {
        mae_sum += mae(ridge.advance(batch.samples[0].input), batch.samples[0].target);
    }
    const double mean_mae = mae_sum / static_cast<double>(samples);
    require(mean_mae < 1e-5, "ridge MAE " + std::to_string(mean_mae));
}

// 4. Explicit scheme: lambda = 0.6 amplifies an oscillatory state by more
//    than 10x over 200 steps; lambda = 0.5 stays inside the data range.
void stability_bound() {
    const std::size_t m = 64;
    std::vector<double> oscillatory(m);
    for (std::size_t i = 0; i < m; ++i) oscillatory[i] = (i % 2 == 0) ? 1.0 : -1.0;

    std::vector<double> unstable = oscillatory;
    bool warned = false;
    for (int step = 0; step < 200; ++step) {
        auto result = explicit_step_1d(unstable, 0.0, 0.0, 0.6);
        warned = warned || result.stability_warning;
        unstable = std::move(result.values);
    }
    double amplitude = 0.0;
    for (double v : unstable) amplitude = std::max(amplitude, std::abs(v));
    require(warned, "no stability warning at lambda 0.6");
    require(amplitude > 10.0, "amplitude only grew to " + std::to_string(amplitude));

    std::vector<double> stable = oscillatory;
    for (int step = 0; step < 200; ++step) {
        stable = explicit_step_1d(stable, 0.0, 0.0, 0.5).values;
    }
    for (double v : stable) {
        require(v >= -1.0 - 1e-9 && v <= 1.0 + 1e-9,
                "value " + std::to_string(v) + " escaped the data range");
    }
}

// 5. ADI run to convergence agrees with the Gauss-Seidel solution of the
//    five-point stencil within 1e-6 on 24x24.
void steady_state_consistency() {
    const std::size_t grid = 24;
    const HeatProblem problem(grid, grid, figure_problem(grid).boundary(), 254.0, 1.0);
    Field state = problem.initial_state();
    double update = 1.0;
    std::size_t steps = 0;
    while (update > 1e-12 && steps < 200000) {
        const Field next = adi_step_2d(state, problem.boundary(), problem.lambda());
        update = max_abs_diff(next, state);
        state = next;
        ++steps;
    }
    require(update <= 1e-12, "ADI did not reach steady state");

    const auto laplace =
        laplace_solve_2d(edge_dirichlet_field(grid, grid, problem.boundary()),
                         edge_mask(grid, grid), 1e-10, 1000000);
    require(laplace.converged, "Gauss-Seidel did not converge");
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid; ++i) {
        for (std::size_t j = 1; j + 1 < grid; ++j) {
            worst = std::max(worst, std::abs(state(i, j) - laplace.field(i, j)));
        }
    }
    require(worst < 1e-6, "steady-state disagreement " + std::to_string(worst));
}

// 6. Implicit and Crank-Nicolson steps match dense assemblies of their
//    equations within 1e-10 on random instances with m <= 50.
void scheme_cross_validation() {
    auto engine = make_engine(substream(2024, 6));
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = static_cast<std::size_t>(draw_index(engine, 1, 50));
        std::vector<double> interior(m);
        for (double& v : interior) v = draw_uniform(engine, 0.0, 100.0);
        const double lam = draw_uniform(engine, 0.0, 2.0);
        const double f0 = draw_uniform(engine, 0.0, 100.0);
        const double f0n = draw_uniform(engine, 0.0, 100.0);
        const double fm = draw_uniform(engine, 0.0, 100.0);
        const double fmn = draw_uniform(engine, 0.0, 100.0);

        const auto implicit_fast = implicit_step_1d(interior, f0n, fmn, lam);
        const auto implicit_dense = oracles::dense_implicit_step(interior, f0n, fmn, lam);
        const auto cn_fast = crank_nicolson_step_1d(interior, f0, f0n, fm, fmn, lam);
        const auto cn_dense =
            oracles::dense_crank_nicolson_step(interior, f0, f0n, fm, fmn, lam);
        for (std::size_t i = 0; i < m; ++i) {
            require(std::abs(implicit_fast[i] - implicit_dense[i]) < 1e-10,
                    "implicit deviates at m " + std::to_string(m));
            require(std::abs(cn_fast[i] - cn_dense[i]) < 1e-10,
                    "Crank-Nicolson deviates at m " + std::to_string(m));
        }
    }
}

// 7. Randomized plans partition 0..L; recursion counts stay under floor(L/P);
//    weighted per-chunk MSEs recombine to the full MSE within 1e-12.
void chunk_bookkeeping() {
    auto engine = make_engine(substream(2024, 7));
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t final_index = draw_index(engine, 0, 500);
        const std::size_t p = draw_index(engine, 1, 50);
        const ChunkPlan plan = plan_chunks(final_index, p);
        require(plan.chunks.size() == p, "wrong chunk count");
        std::vector<std::size_t> all;
        for (std::size_t k = 0; k < plan.chunks.size(); ++k) {
            const auto& chunk = plan.chunks[k];
            if (!chunk.empty()) {
                require(chunk.front() == k, "chunk does not start at its own index");
                require(chunk.size() - 1 <= final_index / p, "recursion bound violated");
            }
            all.insert(all.end(), chunk.begin(), chunk.end());
        }
        std::sort(all.begin(), all.end());
        require(all.size() == final_index + 1, "plan misses indices");
        for (std::size_t t = 0; t <= final_index; ++t) {
            require(all[t] == t, "plan is not a partition");
        }
    }

    // Perturbed chunk runs: the error decomposition must be consistent.
    BoundarySpec bc;
    bc.top = 70.0;
    bc.bottom = 20.0;
    bc.left = 40.0;
    bc.right = 90.0;
    const HeatProblem problem(6, 6, bc, 10.0, 0.3);
    for (const auto [final_index, p] :
         {std::pair<std::size_t, std::size_t>{57, 9}, {100, 10}, {31, 4}}) {
        const ChunkPlan plan = plan_chunks(final_index, p);
        const NumericalHeatPropagator propagator(problem, p);
        auto runs = run_chunks(plan, seed_states(problem, p), propagator, 4);
        const Trajectory reference = recombine(runs);
        for (ChunkRun& run : runs) {
            require(run.recursion_count <= final_index / p, "recursion count too high");
            for (Field& state : run.states) {
                for (double& v : state.values()) v += draw_uniform(engine, -1.0, 1.0);
            }
        }
        const ChunkErrorReport report = chunk_error_report(runs, reference);
        double weighted = 0.0;
        std::size_t total = 0;
        for (std::size_t k = 0; k < report.chunk_mse.size(); ++k) {
            weighted += report.chunk_mse[k] * static_cast<double>(report.chunk_states[k]);
            total += report.chunk_states[k];
        }
        require(std::abs(weighted / static_cast<double>(total) - report.full_mse) < 1e-12,
                "MSE decomposition drift");
    }
}

// 8. Upwind scheme sanity: constants are exact fixed points, total variation
//    never increases, pre-shock solution matches characteristics to 5e-2.
void burgers_sanity() {
    const std::vector<double> constant(48, 2.75);
    require(burgers_step_1d(constant, 0.02, 0.1) == constant, "constant state moved");

    auto engine = make_engine(substream(2024, 8));
    std::vector<double> u(96);
    for (double& v : u) v = draw_uniform(engine, -2.0, 2.0);
    for (int step = 0; step < 500; ++step) {
        const double before = total_variation(u);
        u = burgers_step_1d(u, 0.02, 0.05);
        require(total_variation(u) <= before + 1e-12, "total variation increased");
    }

    const std::size_t n = 256;
    const double dx = 1.0 / static_cast<double>(n);
    auto u0 = [](double x) {
        const double xc = std::clamp(x, 0.0, 1.0);
        const double s = std::sin(M_PI * xc);
        return 1.0 + 0.5 * s * s;
    };
    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; ++i) smooth[i] = u0((static_cast<double>(i) + 0.5) * dx);
    const double target_time = 0.15;
    const std::size_t steps = 72;
    for (std::size_t s = 0; s < steps; ++s) {
        smooth = burgers_step_1d(smooth, target_time / static_cast<double>(steps), dx);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * dx;
        worst = std::max(worst, std::abs(smooth[i] -
                                         oracles::characteristics_solution(u0, x, target_time)));
    }
    require(worst < 5e-2, "characteristics error " + std::to_string(worst));
}

// 9. Fixed-seed generation is byte-identical; dataset and propagator files
//    round-trip bit-exactly; corrupted files raise the distinct errors.
void determinism_and_formats() {
    GenConfig config;
    config.rows = 8;
    config.cols = 8;
    config.prediction_step = 5;
    config.batches = 3;
    config.batch_size = 2;
    config.t_range = {0, 60};
    config.seed = 4242;

    const auto bytes_a = dataset_to_bytes(generate_dataset(config, 1));
    const auto bytes_b = dataset_to_bytes(generate_dataset(config, 4));
    require(bytes_a == bytes_b, "generation is not byte-deterministic");

    const Dataset restored = dataset_from_bytes(bytes_a);
    require(dataset_to_bytes(restored) == bytes_a, "dataset round trip not bit-exact");

    auto truncated = bytes_a;
    truncated.resize(truncated.size() - 5);
    try {
        dataset_from_bytes(truncated);
        require(false, "truncation not detected");
    } catch (const TruncatedPayloadError&) {
    }

    auto corrupted = bytes_a;
    corrupted.back() ^= 0x40;
    try {
        dataset_from_bytes(corrupted);
        require(false, "corruption not detected");
    } catch (const ChecksumMismatchError&) {
    }

    auto tampered = bytes_a;
    // Rewrite the manifest with an inconsistent batch count.
    const auto newline =
        std::find(tampered.begin(), tampered.end(), static_cast<std::uint8_t>('\n'));
    std::string header(tampered.begin(), newline);
    auto manifest = nlohmann::json::parse(header);
    manifest["batches"] = 99;
    const std::string rewritten = manifest.dump();
    std::vector<std::uint8_t> bad(rewritten.begin(), rewritten.end());
    bad.insert(bad.end(), newline, tampered.end());
    try {
        dataset_from_bytes(bad);
        require(false, "header mismatch not detected");
    } catch (const MalformedHeaderError&) {
    }

    const HeatProblem problem = figure_problem(8);
    const AffinePropagator affine = probe_affine(problem, 5);
    const auto prop_bytes = propagator_to_bytes(affine);
    const auto loaded = propagator_from_bytes(prop_bytes);
    require(propagator_to_bytes(*loaded) == prop_bytes, "propagator round trip not bit-exact");
    const Field state = problem.initial_state();
    require(loaded->advance(state) == affine.advance(state),
            "loaded propagator behaves differently");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1 chunker identity (12x12, L=100, P=10, bitwise)", 5.0, chunker_identity},
        {"2 affine oracle (grids <= 24x24, P in {10,100}, 1e-9)", 60.0, affine_oracle},
        {"3 ridge recoverability (reg 1e-10, MAE < 1e-5)", 60.0, ridge_recoverability},
        {"4 explicit stability bound (lambda 0.6 vs 0.5)", 0.0, stability_bound},
        {"5 steady-state consistency (ADI vs Gauss-Seidel, 1e-6)", 30.0,
         steady_state_consistency},
        {"6 scheme cross-validation (dense assemblies, 1e-10)", 0.0, scheme_cross_validation},
        {"7 chunk bookkeeping (partition, recursion, MSE decomposition)", 0.0,
         chunk_bookkeeping},
        {"8 burgers sanity (fixed points, TV, characteristics)", 0.0, burgers_sanity},
        {"9 determinism and file formats", 0.0, determinism_and_formats},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && criterion.time_budget_seconds > 0.0 &&
            elapsed > criterion.time_budget_seconds) {
            std::ostringstream budget;
            budget << "exceeded " << criterion.time_budget_seconds << " s budget";
            failure = budget.str();
        }
        if (failure.empty()) {
            std::cout << "[PASS] " << criterion.name << " (" << elapsed << " s)\n";
        } else {
            ++failures;
            std::cout << "[FAIL] " << criterion.name << ": " << failure << "\n";
        }
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
    }
    return failures == 0 ? 0 : 1;
}
