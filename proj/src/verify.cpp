#include "pdechunk/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "pdechunk/adi.hpp"
#include "pdechunk/burgers.hpp"
#include "pdechunk/chunker.hpp"
#include "pdechunk/datagen.hpp"
#include "pdechunk/dataset_io.hpp"
#include "pdechunk/heat1d.hpp"
#include "pdechunk/laplace.hpp"
#include "pdechunk/metrics.hpp"
#include "pdechunk/propagator.hpp"
#include "pdechunk/rng.hpp"
#include "pdechunk/tridiagonal.hpp"

namespace pdechunk {

namespace {

struct Check {
    std::string name;
    std::function<void()> body;
};

void expect(bool condition, const std::string& detail) {
    if (!condition) {
        throw std::runtime_error(detail);
    }
}

Eigen::MatrixXd dense_tridiagonal(const TridiagonalSystem& sys) {
    const auto m = static_cast<Eigen::Index>(sys.diag.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = sys.diag[static_cast<std::size_t>(i)];
        if (i > 0) a(i, i - 1) = sys.lower[static_cast<std::size_t>(i)];
        if (i + 1 < m) a(i, i + 1) = sys.upper[static_cast<std::size_t>(i)];
    }
    return a;
}

TridiagonalSystem random_dominant_system(std::mt19937_64& engine, std::size_t m) {
    TridiagonalSystem sys;
    sys.lower.resize(m);
    sys.diag.resize(m);
    sys.upper.resize(m);
    sys.rhs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        sys.lower[i] = draw_uniform(engine, -1.0, 1.0);
        sys.upper[i] = draw_uniform(engine, -1.0, 1.0);
        sys.diag[i] = draw_uniform(engine, 2.5, 4.0);
        sys.rhs[i] = draw_uniform(engine, -10.0, 10.0);
    }
    return sys;
}

HeatProblem reference_problem(std::size_t grid) {
    BoundarySpec bc;
    bc.top = 600.0;
    bc.bottom = 500.0;
    bc.left = 194.0;
    bc.right = 248.0;
    return HeatProblem(grid, grid, bc, 254.0, 0.27047);
}

void check_thomas_vs_dense() {
    auto engine = make_engine(substream(41, 1));
    for (int trial = 0; trial < 5; ++trial) {
        const TridiagonalSystem sys = random_dominant_system(engine, 50);
        const std::vector<double> x = thomas_solve(sys);
        const Eigen::MatrixXd a = dense_tridiagonal(sys);
        const Eigen::VectorXd xe = Eigen::Map<const Eigen::VectorXd>(x.data(), 50);
        const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(sys.rhs.data(), 50);
        const double residual = (a * xe - rhs).cwiseAbs().maxCoeff();
        expect(residual < 1e-10, "residual " + std::to_string(residual));
    }
}

void check_explicit_hand_case() {
    const std::vector<double> interior{100.0, 100.0, 100.0};
    const auto result = explicit_step_1d(interior, 0.0, 0.0, 0.5);
    expect(result.values == std::vector<double>({50.0, 100.0, 50.0}), "wrong explicit update");
    expect(!result.stability_warning, "unexpected warning at lambda = 1/2");
}

void check_implicit_cn_vs_dense() {
    auto engine = make_engine(substream(41, 2));
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t m = 20;
        std::vector<double> interior(m);
        for (double& v : interior) v = draw_uniform(engine, 0.0, 100.0);
        const double lambda = draw_uniform(engine, 0.01, 1.0);
        const double f0 = draw_uniform(engine, 0.0, 100.0);
        const double fm1 = draw_uniform(engine, 0.0, 100.0);

        {
            const std::vector<double> x = implicit_step_1d(interior, f0, fm1, lambda);
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
            Eigen::VectorXd rhs(m);
            for (std::size_t i = 0; i < m; ++i) {
                a(i, i) = 1.0 + 2.0 * lambda;
                if (i > 0) a(i, i - 1) = -lambda;
                if (i + 1 < m) a(i, i + 1) = -lambda;
                rhs(static_cast<Eigen::Index>(i)) = interior[i];
            }
            rhs(0) += lambda * f0;
            rhs(m - 1) += lambda * fm1;
            const Eigen::VectorXd xd = a.partialPivLu().solve(rhs);
            for (std::size_t i = 0; i < m; ++i) {
                expect(std::abs(x[i] - xd(static_cast<Eigen::Index>(i))) < 1e-10,
                       "implicit step differs from dense solve");
            }
        }
        {
            const std::vector<double> x =
                crank_nicolson_step_1d(interior, f0, f0, fm1, fm1, lambda);
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
            Eigen::VectorXd rhs(m);
            for (std::size_t i = 0; i < m; ++i) {
                a(i, i) = 2.0 * (1.0 + lambda);
                if (i > 0) a(i, i - 1) = -lambda;
                if (i + 1 < m) a(i, i + 1) = -lambda;
                const double lo = (i == 0) ? f0 : interior[i - 1];
                const double hi = (i + 1 == m) ? fm1 : interior[i + 1];
                rhs(static_cast<Eigen::Index>(i)) =
                    lambda * lo + 2.0 * (1.0 - lambda) * interior[i] + lambda * hi;
            }
            rhs(0) += lambda * f0;
            rhs(m - 1) += lambda * fm1;
            const Eigen::VectorXd xd = a.partialPivLu().solve(rhs);
            for (std::size_t i = 0; i < m; ++i) {
                expect(std::abs(x[i] - xd(static_cast<Eigen::Index>(i))) < 1e-10,
                       "Crank-Nicolson step differs from dense solve");
            }
        }
    }
}

// Assembles both half-step sweeps as dense systems and replays one ADI step.
Field dense_adi_step(const Field& field, const BoundarySpec& bc, double lambda) {
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    const std::size_t mx = cols - 2;
    const std::size_t my = rows - 2;
    Field half = apply_dirichlet(Field(rows, cols, 0.0), bc);
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(mx, mx);
        Eigen::VectorXd rhs(mx);
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            const std::size_t r = j - 1;
            a(r, r) = 2.0 * (1.0 + lambda);
            if (r > 0) a(r, r - 1) = -lambda;
            if (r + 1 < mx) a(r, r + 1) = -lambda;
            rhs(static_cast<Eigen::Index>(r)) = lambda * field(i - 1, j) +
                                                2.0 * (1.0 - lambda) * field(i, j) +
                                                lambda * field(i + 1, j);
        }
        rhs(0) += lambda * bc.left;
        rhs(static_cast<Eigen::Index>(mx - 1)) += lambda * bc.right;
        const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
        for (std::size_t j = 1; j + 1 < cols; ++j) half(i, j) = x(static_cast<Eigen::Index>(j - 1));
    }
    Field next = apply_dirichlet(Field(rows, cols, 0.0), bc);
    for (std::size_t j = 1; j + 1 < cols; ++j) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(my, my);
        Eigen::VectorXd rhs(my);
        for (std::size_t i = 1; i + 1 < rows; ++i) {
            const std::size_t r = i - 1;
            a(r, r) = 2.0 * (1.0 + lambda);
            if (r > 0) a(r, r - 1) = -lambda;
            if (r + 1 < my) a(r, r + 1) = -lambda;
            rhs(static_cast<Eigen::Index>(r)) = lambda * half(i, j - 1) +
                                                2.0 * (1.0 - lambda) * half(i, j) +
                                                lambda * half(i, j + 1);
        }
        rhs(0) += lambda * bc.top;
        rhs(static_cast<Eigen::Index>(my - 1)) += lambda * bc.bottom;
        const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
        for (std::size_t i = 1; i + 1 < rows; ++i) next(i, j) = x(static_cast<Eigen::Index>(i - 1));
    }
    return next;
}

void check_adi_vs_dense() {
    const HeatProblem problem = reference_problem(12);
    const Field start = problem.initial_state();
    const Field fast = adi_step_2d(start, problem.boundary(), problem.lambda());
    const Field dense = dense_adi_step(start, problem.boundary(), problem.lambda());
    double max_diff = 0.0;
    for (std::size_t i = 0; i < fast.rows(); ++i) {
        for (std::size_t j = 0; j < fast.cols(); ++j) {
            max_diff = std::max(max_diff, std::abs(fast(i, j) - dense(i, j)));
        }
    }
    expect(max_diff < 1e-10, "ADI vs dense max diff " + std::to_string(max_diff));
}

void check_equilibrium_fixed_points() {
    const std::vector<double> interior(8, 42.0);
    const auto ex = explicit_step_1d(interior, 42.0, 42.0, 0.4);
    for (double v : ex.values) expect(std::abs(v - 42.0) < 1e-12, "explicit equilibrium drift");
    for (double v : implicit_step_1d(interior, 42.0, 42.0, 0.7)) {
        expect(std::abs(v - 42.0) < 1e-12, "implicit equilibrium drift");
    }
    for (double v : crank_nicolson_step_1d(interior, 42.0, 42.0, 42.0, 42.0, 0.7)) {
        expect(std::abs(v - 42.0) < 1e-12, "Crank-Nicolson equilibrium drift");
    }
    BoundarySpec bc;
    bc.top = bc.bottom = bc.left = bc.right = 42.0;
    const Field uniform(9, 9, 42.0);
    const Field next = adi_step_2d(uniform, bc, 0.8);
    for (double v : next.values()) expect(std::abs(v - 42.0) < 1e-12, "ADI equilibrium drift");
}

void check_chunker_identity() {
    const HeatProblem problem = reference_problem(12);
    const std::size_t final_index = 60;
    const std::size_t p = 10;
    const Trajectory reference = heat_solve_2d(problem, final_index);
    const ChunkPlan plan = plan_chunks(final_index, p);
    const NumericalHeatPropagator propagator(problem, p);
    const auto runs = run_chunks(plan, seed_states(problem, p), propagator, 4);
    const Trajectory combined = recombine(runs);
    expect(combined == reference, "chunked result differs from sequential solve");
}

void check_affine_probe() {
    const HeatProblem problem = reference_problem(12);
    const std::size_t p = 10;
    const NumericalHeatPropagator numerical(problem, p);
    const AffinePropagator affine = probe_affine(problem, p, 4);
    auto engine = make_engine(substream(41, 3));
    for (int trial = 0; trial < 20; ++trial) {
        Field state = problem.initial_state();
        std::vector<double> interior(problem.interior_count());
        for (double& v : interior) v = draw_uniform(engine, 0.0, 600.0);
        state.set_interior(interior);
        const double diff = mae(numerical.advance(state), affine.advance(state));
        expect(diff < 1e-9, "affine propagator off by " + std::to_string(diff));
    }
}

void check_plan_partition() {
    auto engine = make_engine(substream(41, 4));
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t final_index = draw_index(engine, 0, 400);
        const std::size_t p = draw_index(engine, 1, 40);
        const ChunkPlan plan = plan_chunks(final_index, p);
        std::vector<std::size_t> all;
        for (const auto& chunk : plan.chunks) {
            all.insert(all.end(), chunk.begin(), chunk.end());
        }
        std::sort(all.begin(), all.end());
        expect(all.size() == final_index + 1, "plan does not cover 0..L");
        for (std::size_t t = 0; t <= final_index; ++t) {
            expect(all[t] == t, "plan indices are not a partition");
        }
    }
}

void check_burgers_behaviour() {
    const std::vector<double> constant(32, 3.5);
    expect(burgers_step_1d(constant, 0.01, 0.1) == constant, "constant state moved");
    auto engine = make_engine(substream(41, 5));
    std::vector<double> u(64);
    for (double& v : u) v = draw_uniform(engine, -1.0, 1.0);
    for (int step = 0; step < 200; ++step) {
        const double before = total_variation(u);
        u = burgers_step_1d(u, 0.05, 0.1);
        expect(total_variation(u) <= before + 1e-12, "total variation increased");
    }
}

void check_laplace_residual() {
    BoundarySpec bc;
    bc.top = 75.0;
    bc.bottom = 10.0;
    bc.left = 0.0;
    bc.right = 100.0;
    const double tol = 1e-9;
    const auto result = laplace_solve_2d(edge_dirichlet_field(16, 16, bc), edge_mask(16, 16),
                                         tol, 200000);
    expect(result.converged, "Gauss-Seidel did not converge");
    const Field& t = result.field;
    for (std::size_t i = 1; i + 1 < t.rows(); ++i) {
        for (std::size_t j = 1; j + 1 < t.cols(); ++j) {
            const double stencil =
                0.25 * (t(i + 1, j) + t(i - 1, j) + t(i, j + 1) + t(i, j - 1));
            expect(std::abs(stencil - t(i, j)) < 4.0 * tol, "stencil residual too large");
        }
    }
}

void check_dataset_determinism() {
    GenConfig config;
    config.rows = 8;
    config.cols = 8;
    config.prediction_step = 5;
    config.batches = 3;
    config.batch_size = 2;
    config.t_range = {0, 50};
    config.seed = 7;
    const auto once = dataset_to_bytes(generate_dataset(config, 1));
    const auto again = dataset_to_bytes(generate_dataset(config, 4));
    expect(once == again, "generation is not deterministic across thread counts");
}

void check_standardize_round_trip() {
    auto engine = make_engine(substream(41, 6));
    Standardizer stats{12.5, 3.25};
    Field f(6, 6, 0.0);
    for (double& v : f.values()) v = draw_uniform(engine, -50.0, 50.0);
    const Field back = destandardize(standardize(f, stats), stats);
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            expect(std::abs(back(i, j) - f(i, j)) < 1e-12, "round trip drift");
        }
    }
}

}  // namespace

int run_verification(std::ostream& out) {
    const std::vector<Check> checks{
        {"thomas solver matches dense solve", check_thomas_vs_dense},
        {"explicit step hand-checked update", check_explicit_hand_case},
        {"implicit and Crank-Nicolson match dense assembly", check_implicit_cn_vs_dense},
        {"ADI step matches dense half-step systems", check_adi_vs_dense},
        {"uniform equilibrium is a fixed point of every scheme", check_equilibrium_fixed_points},
        {"chunked numerical run equals sequential solve", check_chunker_identity},
        {"probed affine propagator matches numerical map", check_affine_probe},
        {"chunk plans partition the time indices", check_plan_partition},
        {"upwind scheme: constant states fixed, variation non-increasing",
         check_burgers_behaviour},
        {"converged Laplace solution satisfies the five-point stencil", check_laplace_residual},
        {"dataset generation is deterministic", check_dataset_determinism},
        {"standardization round trip is exact", check_standardize_round_trip},
    };

    int failures = 0;
    for (const Check& check : checks) {
        try {
            check.body();
            out << "[PASS] " << check.name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            out << "[FAIL] " << check.name << ": " << e.what() << "\n";
        }
    }
    return failures;
}

}  // namespace pdechunk
