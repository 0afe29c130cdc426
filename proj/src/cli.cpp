#include "pdechunk/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "pdechunk/adi.hpp"
#include "pdechunk/bench.hpp"
#include "pdechunk/burgers.hpp"
#include "pdechunk/chunker.hpp"
#include "pdechunk/datagen.hpp"
#include "pdechunk/dataset_io.hpp"
#include "pdechunk/laplace.hpp"
#include "pdechunk/metrics.hpp"
#include "pdechunk/propagator.hpp"
#include "pdechunk/trajectory_io.hpp"
#include "pdechunk/verify.hpp"

namespace pdechunk {

namespace {

/// Bad flag values detected after CLI11 parsing; mapped to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridArg {
    std::size_t rows = 12;
    std::size_t cols = 12;
};

GridArg parse_grid(const std::string& text) {
    GridArg grid;
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            grid.rows = grid.cols = std::stoul(text);
        } else {
            grid.rows = std::stoul(text.substr(0, comma));
            grid.cols = std::stoul(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw UsageError("--grid expects N or N,M");
    }
    return grid;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            values.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw UsageError(flag + " expects a comma-separated list of integers");
        }
    }
    if (values.empty()) {
        throw UsageError(flag + " must be non-empty");
    }
    return values;
}

BoundarySpec boundary_from(const std::vector<double>& bc) {
    BoundarySpec spec;
    spec.top = bc[0];
    spec.bottom = bc[1];
    spec.left = bc[2];
    spec.right = bc[3];
    return spec;
}

// Demo initial profile for the upwind solver: ic + amp * sin(2*pi*x), x at
// cell centers of the unit interval.
std::vector<double> burgers_profile(std::size_t cells, double ic, double amp) {
    std::vector<double> u(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
        u[i] = ic + amp * std::sin(2.0 * std::numbers::pi * x);
    }
    return u;
}

void export_trajectory(const Trajectory& trajectory, const std::string& path,
                       const std::string& format) {
    if (format == "csv") {
        write_trajectory_csv(trajectory, path);
    } else {
        write_trajectory_binary(trajectory, path);
    }
}

struct CommonProblemFlags {
    std::string grid_text = "12";
    double lambda = 0.25;
    std::vector<double> bc{0.0, 0.0, 0.0, 0.0};
    double ic = 0.0;

    void attach(CLI::App* cmd, bool with_grid = true) {
        if (with_grid) {
            cmd->add_option("--grid", grid_text, "grid size N or N,M");
        }
        cmd->add_option("--lambda", lambda, "diffusion number k*dt/dx^2");
        cmd->add_option("--bc", bc, "Dirichlet edge values: top,bottom,left,right")
            ->delimiter(',')
            ->expected(4);
        cmd->add_option("--ic", ic, "uniform initial interior value");
    }

    HeatProblem to_problem() const {
        const GridArg grid = parse_grid(grid_text);
        return HeatProblem(grid.rows, grid.cols, boundary_from(bc), ic, lambda);
    }
};

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"finite-difference PDE solvers with chunked parallel-in-time acceleration",
                 "pdechunk"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run a heat or Burgers trajectory and export it");
    CommonProblemFlags solve_flags;
    solve_flags.attach(solve);
    std::size_t solve_steps = 100;
    std::string solve_equation = "heat";
    std::string solve_out;
    std::string solve_format = "csv";
    double solve_dt = 0.05;
    double solve_dx = 0.1;
    double solve_amp = 0.5;
    solve->add_option("--steps", solve_steps, "number of time steps");
    solve->add_option("--equation", solve_equation, "heat or burgers")
        ->check(CLI::IsMember({"heat", "burgers"}));
    solve->add_option("--out", solve_out, "output path");
    solve->add_option("--format", solve_format, "csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));
    solve->add_option("--dt", solve_dt, "Burgers time step");
    solve->add_option("--dx", solve_dx, "Burgers cell width");
    solve->add_option("--amp", solve_amp, "Burgers initial sine amplitude");

    // steady
    auto* steady = app.add_subcommand("steady", "solve the steady heat (Laplace) problem");
    CommonProblemFlags steady_flags;
    steady_flags.attach(steady);
    double steady_tol = 1e-8;
    std::size_t steady_max_iters = 1000000;
    std::string steady_out;
    std::string steady_format = "csv";
    steady->add_option("--tol", steady_tol, "max-update convergence tolerance");
    steady->add_option("--max-iters", steady_max_iters, "sweep limit");
    steady->add_option("--out", steady_out, "output path");
    steady->add_option("--format", steady_format, "csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));

    // generate
    auto* generate = app.add_subcommand("generate", "generate a randomized training dataset");
    GenConfig gen_config;
    std::string gen_grid_text = "12";
    std::vector<double> gen_bc_range{0.0, 100.0};
    std::vector<double> gen_lambda_range{0.0, 1.0};
    std::vector<std::uint64_t> gen_t_range{0, 1000};
    std::size_t gen_threads = 1;
    std::string gen_out;
    generate->add_option("--grid", gen_grid_text, "grid size N or N,M");
    generate->add_option("--pred-step", gen_config.prediction_step, "prediction step P");
    generate->add_option("--batches", gen_config.batches, "number of batches");
    generate->add_option("--batch-size", gen_config.batch_size, "samples per batch");
    generate->add_option("--seed", gen_config.seed, "RNG seed");
    generate->add_option("--bc-range", gen_bc_range, "boundary/initial range lo,hi")
        ->delimiter(',')
        ->expected(2);
    generate->add_option("--lambda-range", gen_lambda_range, "lambda range lo,hi")
        ->delimiter(',')
        ->expected(2);
    generate->add_option("--t-range", gen_t_range, "start step range lo,hi")
        ->delimiter(',')
        ->expected(2);
    generate->add_option("--threads", gen_threads, "worker threads");
    generate->add_option("--out", gen_out, "dataset output path")->required();

    // probe
    auto* probe = app.add_subcommand("probe", "build the probed affine propagator");
    CommonProblemFlags probe_flags;
    probe_flags.attach(probe);
    std::size_t probe_p = 10;
    std::size_t probe_threads = 1;
    std::string probe_out;
    probe->add_option("--pred-step", probe_p, "prediction step P");
    probe->add_option("--threads", probe_threads, "worker threads");
    probe->add_option("--out", probe_out, "propagator output path")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "fit the ridge-regression surrogate on a dataset");
    std::string fit_dataset;
    double fit_reg = 1e-8;
    std::string fit_out;
    fit->add_option("--dataset", fit_dataset, "dataset path")->required();
    fit->add_option("--reg", fit_reg, "ridge regularization strength");
    fit->add_option("--out", fit_out, "propagator output path")->required();

    // chunk-run
    auto* chunk = app.add_subcommand(
        "chunk-run", "plan chunks, seed, run them in parallel, recombine, report errors");
    CommonProblemFlags chunk_flags;
    chunk_flags.attach(chunk);
    std::size_t chunk_steps = 100;
    std::size_t chunk_p = 10;
    std::string chunk_propagator = "numerical";
    std::string chunk_propagator_file;
    std::string chunk_equation = "heat";
    double chunk_dt = 0.05;
    double chunk_dx = 0.1;
    double chunk_amp = 0.5;
    std::size_t chunk_threads = 1;
    std::string chunk_out;
    std::string chunk_format = "csv";
    bool chunk_no_report = false;
    chunk->add_option("--steps", chunk_steps, "final time index L");
    auto* chunk_p_option = chunk->add_option("--pred-step", chunk_p, "prediction step P");
    chunk->add_option("--propagator", chunk_propagator, "numerical, affine, or ridge")
        ->check(CLI::IsMember({"numerical", "affine", "ridge"}));
    chunk->add_option("--propagator-file", chunk_propagator_file,
                      "load the propagator from a saved file");
    chunk->add_option("--equation", chunk_equation, "heat or burgers")
        ->check(CLI::IsMember({"heat", "burgers"}));
    chunk->add_option("--dt", chunk_dt, "Burgers time step");
    chunk->add_option("--dx", chunk_dx, "Burgers cell width");
    chunk->add_option("--amp", chunk_amp, "Burgers initial sine amplitude");
    chunk->add_option("--threads", chunk_threads, "chunk worker threads");
    chunk->add_option("--out", chunk_out, "recombined trajectory output path");
    chunk->add_option("--format", chunk_format, "csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));
    chunk->add_flag("--no-report", chunk_no_report, "skip the reference error report");
    bool chunk_approx_seeds = false;
    chunk->add_flag("--approx-seeds", chunk_approx_seeds,
                    "seed every chunk from the initial state (approximate)");

    // bench
    auto* bench = app.add_subcommand("bench", "time numerical stepping against a propagator");
    CommonProblemFlags bench_flags;
    bench_flags.attach(bench, /*with_grid=*/false);  // grid sizes come from --grids
    std::string bench_grids = "12,24,48,96";
    std::string bench_steps_list;
    std::size_t bench_p = 10;
    std::size_t bench_reps = 5;
    std::string bench_propagator = "numerical";
    std::size_t bench_threads = 1;
    std::string bench_out;
    bench->add_option("--grids", bench_grids, "square grid sizes, comma separated");
    bench->add_option("--steps-list", bench_steps_list,
                      "iteration counts, comma separated (default: P)");
    bench->add_option("--pred-step", bench_p, "prediction step P");
    bench->add_option("--reps", bench_reps, "timed repetitions per entry");
    bench->add_option("--propagator", bench_propagator, "numerical or affine")
        ->check(CLI::IsMember({"numerical", "affine"}));
    bench->add_option("--threads", bench_threads, "probing threads for the affine propagator");
    bench->add_option("--out", bench_out, "CSV output path (default: stdout)");

    // verify
    app.add_subcommand("verify", "run the oracle equivalence suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (solve->parsed()) {
        Trajectory trajectory;
        if (solve_equation == "heat") {
            trajectory = heat_solve_2d(solve_flags.to_problem(), solve_steps);
        } else {
            const GridArg grid = parse_grid(solve_flags.grid_text);
            BurgersProblem problem{burgers_profile(grid.rows, solve_flags.ic, solve_amp),
                                   solve_dt, solve_dx};
            trajectory = burgers_solve_1d(problem, solve_steps);
        }
        if (!solve_out.empty()) {
            export_trajectory(trajectory, solve_out, solve_format);
        }
        std::cout << "solved " << solve_equation << " trajectory of " << trajectory.size()
                  << " states\n";
        return 0;
    }

    if (steady->parsed()) {
        const GridArg grid = parse_grid(steady_flags.grid_text);
        const BoundarySpec bc = boundary_from(steady_flags.bc);
        const LaplaceResult result =
            laplace_solve_2d(edge_dirichlet_field(grid.rows, grid.cols, bc),
                             edge_mask(grid.rows, grid.cols), steady_tol, steady_max_iters);
        if (!steady_out.empty()) {
            Trajectory single;
            single.push_back(0, result.field);
            export_trajectory(single, steady_out, steady_format);
        }
        std::cout << (result.converged ? "converged" : "did not converge") << " after "
                  << result.iterations << " sweeps (last max update " << result.last_max_update
                  << ")\n";
        return result.converged ? 0 : 2;
    }

    if (generate->parsed()) {
        const GridArg grid = parse_grid(gen_grid_text);
        gen_config.rows = grid.rows;
        gen_config.cols = grid.cols;
        gen_config.bc_ic_range = {gen_bc_range[0], gen_bc_range[1]};
        gen_config.lambda_range = {gen_lambda_range[0], gen_lambda_range[1]};
        gen_config.t_range = {gen_t_range[0], gen_t_range[1]};
        const Dataset dataset = generate_dataset(gen_config, gen_threads);
        write_dataset(dataset, gen_out);
        std::cout << "wrote " << dataset.sample_count() << " samples in "
                  << dataset.batches.size() << " batches to " << gen_out << "\n";
        return 0;
    }

    if (probe->parsed()) {
        const HeatProblem problem = probe_flags.to_problem();
        const AffinePropagator propagator = probe_affine(problem, probe_p, probe_threads);
        save_propagator(propagator, probe_out);
        std::cout << "probed affine propagator (" << problem.interior_count()
                  << " interior nodes) to " << probe_out << "\n";
        return 0;
    }

    if (fit->parsed()) {
        const Dataset dataset = read_dataset(fit_dataset);
        const RidgePropagator propagator = fit_ridge(dataset, fit_reg);
        save_propagator(propagator, fit_out);
        std::cout << "fit ridge propagator on " << dataset.sample_count() << " samples to "
                  << fit_out << "\n";
        return 0;
    }

    if (chunk->parsed()) {
        std::unique_ptr<Propagator> loaded;
        if (!chunk_propagator_file.empty()) {
            loaded = load_propagator(chunk_propagator_file);
            if (chunk_p_option->count() == 0) {
                chunk_p = loaded->prediction_step();
            }
        }
        const ChunkPlan plan = plan_chunks(chunk_steps, chunk_p);
        std::vector<Field> seeds;
        std::unique_ptr<Propagator> propagator;
        std::unique_ptr<Trajectory> reference;

        if (chunk_equation == "heat") {
            const HeatProblem problem = chunk_flags.to_problem();
            seeds = chunk_approx_seeds
                        ? approximate_seed_states(problem.initial_state(), chunk_p)
                        : seed_states(problem, chunk_p);
            if (loaded) {
                propagator = std::move(loaded);
            } else if (chunk_propagator == "numerical") {
                propagator = std::make_unique<NumericalHeatPropagator>(problem, chunk_p);
            } else if (chunk_propagator == "affine") {
                propagator = std::make_unique<AffinePropagator>(
                    probe_affine(problem, chunk_p, chunk_threads));
            } else {
                throw std::invalid_argument(
                    "ridge propagators must be loaded via --propagator-file");
            }
            if (!chunk_no_report) {
                reference = std::make_unique<Trajectory>(heat_solve_2d(problem, chunk_steps));
            }
        } else {
            const GridArg grid = parse_grid(chunk_flags.grid_text);
            BurgersProblem problem{burgers_profile(grid.rows, chunk_flags.ic, chunk_amp),
                                   chunk_dt, chunk_dx};
            seeds = chunk_approx_seeds
                        ? approximate_seed_states(Field::column(problem.initial), chunk_p)
                        : seed_states(problem, chunk_p);
            if (loaded) {
                propagator = std::move(loaded);
            } else if (chunk_propagator == "numerical") {
                propagator = std::make_unique<NumericalBurgersPropagator>(
                    problem.initial.size(), chunk_dt, chunk_dx, chunk_p);
            } else {
                throw std::invalid_argument(
                    "only the numerical propagator is built in for burgers");
            }
            if (!chunk_no_report) {
                reference = std::make_unique<Trajectory>(burgers_solve_1d(problem, chunk_steps));
            }
        }

        if (chunk_approx_seeds) {
            std::cout << "approximate seeding: every chunk starts from the initial state\n";
        }
        const auto runs = run_chunks(plan, seeds, *propagator, chunk_threads);
        const Trajectory combined = recombine(runs);
        if (!chunk_out.empty()) {
            export_trajectory(combined, chunk_out, chunk_format);
        }
        if (reference) {
            const ChunkErrorReport report = chunk_error_report(runs, *reference);
            std::cout << "chunk,states,mse,mae\n";
            std::cout.precision(17);
            for (std::size_t k = 0; k < report.chunk_mse.size(); ++k) {
                std::cout << k << ',' << report.chunk_states[k] << ',' << report.chunk_mse[k]
                          << ',' << report.chunk_mae[k] << '\n';
            }
            std::cout << "full," << combined.size() << ',' << report.full_mse << ','
                      << report.full_mae << '\n';
        } else {
            std::cout << "recombined " << combined.size() << " states\n";
        }
        return 0;
    }

    if (bench->parsed()) {
        const std::vector<std::size_t> grids = parse_size_list(bench_grids, "--grids");
        const std::vector<std::size_t> steps_list =
            bench_steps_list.empty() ? std::vector<std::size_t>{bench_p}
                                     : parse_size_list(bench_steps_list, "--steps-list");
        const BoundarySpec bc = boundary_from(bench_flags.bc);
        auto make_problem = [&](std::size_t grid) {
            return HeatProblem(grid, grid, bc, bench_flags.ic, bench_flags.lambda);
        };
        PropagatorFactory factory;
        if (bench_propagator == "numerical") {
            factory = [](const HeatProblem& p, std::size_t steps) {
                return std::make_unique<NumericalHeatPropagator>(p, steps);
            };
        } else {
            factory = [bench_threads](const HeatProblem& p,
                                      std::size_t steps) -> std::unique_ptr<Propagator> {
                return std::make_unique<AffinePropagator>(probe_affine(p, steps, bench_threads));
            };
        }
        const auto records =
            bench_sweep(grids, steps_list, bench_p, factory, make_problem, bench_reps);
        std::ostringstream csv;
        csv << bench_csv_header() << '\n';
        for (const BenchRecord& record : records) {
            csv << bench_csv_row(record) << '\n';
        }
        if (bench_out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(bench_out, std::ios::trunc);
            if (!out) {
                throw std::runtime_error("cannot open " + bench_out + " for writing");
            }
            out << csv.str();
            std::cout << "wrote " << records.size() << " bench records to " << bench_out << "\n";
        }
        return 0;
    }

    // verify
    const int failures = run_verification(std::cout);
    return failures == 0 ? 0 : 2;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
    try {
        return run_cli(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace pdechunk
