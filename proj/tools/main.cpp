// asikit: generate test problems, run the asynchronous solvers, audit the
// operator families, and emit plot-ready CSV/JSON artifacts.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <map>
#include <sstream>

#include "asi/family.hpp"
#include "asi/phantom.hpp"
#include "asi/projector.hpp"
#include "asi/random_system.hpp"
#include "asi/simulate.hpp"
#include "asi/threaded.hpp"

using namespace asi;
namespace fs = std::filesystem;

namespace {

// Exit code taxonomy (documented in the README):
//   0 converged / all audits passed
//   1 bad usage or configuration
//   2 run diverged
//   3 staleness violation
//   4 I/O error
//   5 audit failure (check command)
//   6 epoch cap reached before the stopping threshold
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDiverged = 2,
    kStaleness = 3,
    kIo = 4,
    kAuditFailed = 5,
    kMaxEpochs = 6,
};

int exit_code_for(Termination t) {
    switch (t) {
        case Termination::Converged: return kOk;
        case Termination::Diverged: return kDiverged;
        case Termination::StalenessViolation: return kStaleness;
        case Termination::MaxEpochs: return kMaxEpochs;
        case Termination::Aborted: return kStaleness;
    }
    return kUsage;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    return out;
}

struct ProblemArgs {
    std::string load_a, load_b, load_x;
    std::string random_spec;   // "rows,cols,nnz"
    std::string phantom_spec;  // "side,angles,detectors"
    std::string ellipse_table;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--load-a", load_a, "Matrix Market file for A");
        cmd->add_option("--load-b", load_b, "vector file for b (.txt or raw f64)");
        cmd->add_option("--load-x", load_x, "vector file for the known solution");
        cmd->add_option("--random", random_spec,
                        "generate a random consistent system: rows,cols,nnz_per_row");
        cmd->add_option("--phantom", phantom_spec,
                        "generate a phantom projection system: side,angles,detectors");
        cmd->add_option("--ellipse-table", ellipse_table,
                        "JSON ellipse table overriding the built-in phantom");
        cmd->add_option("--seed", seed, "seed for generators and the run engine");
    }

    TomographySystem build() const {
        const int sources = (!load_a.empty()) + (!random_spec.empty()) +
                            (!phantom_spec.empty());
        if (sources != 1)
            throw InvalidParameter(
                "choose exactly one problem source: --load-a/--load-b, --random, or --phantom");
        if (!load_a.empty()) {
            if (load_b.empty())
                throw InvalidParameter("--load-a requires --load-b");
            std::optional<fs::path> x;
            if (!load_x.empty()) x = load_x;
            return load_system(load_a, load_b, x);
        }
        if (!random_spec.empty()) {
            auto dims = parse_size_list(random_spec);
            if (dims.size() != 3)
                throw InvalidParameter("--random expects rows,cols,nnz_per_row");
            RandomSystemSpec spec;
            spec.rows = dims[0];
            spec.cols = dims[1];
            spec.nnz_per_row = dims[2];
            spec.seed = seed;
            return make_random_system(spec);
        }
        auto dims = parse_size_list(phantom_spec);
        if (dims.size() != 3)
            throw InvalidParameter("--phantom expects side,angles,detectors");
        std::vector<Ellipse> table;
        if (!ellipse_table.empty()) table = read_ellipse_table(ellipse_table);
        auto img = table.empty() ? make_phantom(dims[0]) : make_phantom(dims[0], table);
        return make_projector(img, half_circle_angles(dims[1]), dims[2]);
    }

    nlohmann::json echo() const {
        return {{"load_a", load_a},       {"load_b", load_b},
                {"load_x", load_x},       {"random", random_spec},
                {"phantom", phantom_spec}, {"ellipse_table", ellipse_table},
                {"seed", seed}};
    }
};

struct SolverArgs {
    std::string family = "drop";
    std::size_t blocks = 40;
    std::string block_strategy = "contiguous";
    std::size_t overlap = 0;
    bool global_counts = false;
    std::string algorithm = "asi";  // asi | ekn | km
    std::string lambda = "auto";
    int tau = 0;
    double mu = 1.0;
    double margin = 1e-3;
    bool unsafe = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "operator family: art | drop")
            ->check(CLI::IsMember({"art", "drop"}));
        cmd->add_option("--r", blocks, "number of row blocks (drop family)");
        cmd->add_option("--block-strategy", block_strategy,
                        "contiguous | strided | overlapping")
            ->check(CLI::IsMember({"contiguous", "strided", "overlapping"}));
        cmd->add_option("--overlap", overlap, "extra rows shared by overlapping blocks");
        cmd->add_flag("--global-counts", global_counts,
                      "use whole-matrix column counts in the drop diagonal");
        cmd->add_option("--alg", algorithm, "asi | ekn | km")
            ->check(CLI::IsMember({"asi", "ekn", "km"}));
        cmd->add_option("--lambda", lambda, "step size in (0,1), or 'auto'");
        cmd->add_option("--tau", tau, "staleness cap");
        cmd->add_option("--mu", mu, "xi-monitor weight parameter");
        cmd->add_option("--eps-margin", margin, "margin in the step-size bound");
        cmd->add_flag("--unsafe", unsafe,
                      "skip the safe-mode clamp to the proven step bound");
    }

    BlockStrategy strategy() const {
        if (block_strategy == "contiguous") return BlockStrategy::Contiguous;
        if (block_strategy == "strided") return BlockStrategy::Strided;
        return BlockStrategy::Overlapping;
    }

    SolverSetup build(const TomographySystem& sys) const {
        const auto fam = family_from_string(family);
        if (fam == OperatorFamily::Drop) {
            SolverSetup setup;
            setup.partition =
                build_blocks(sys.A.rows(), blocks, strategy(), overlap);
            setup.drop = make_drop_family(sys.A, sys.b, setup.partition, global_counts);
            setup.ops = setup.drop.solver_ops;
            return setup;
        }
        return make_solver_setup(fam, sys.A, sys.b);
    }

    StepSchedule schedule() const {
        double base;
        if (lambda == "auto")
            base = max_step_size(tau, margin);
        else
            base = std::stod(lambda);
        auto sched = StepSchedule::constant(base);
        if (!unsafe) sched = sched.clamped(tau, margin);
        return sched;
    }

    nlohmann::json echo() const {
        return {{"family", family},   {"r", blocks},
                {"block_strategy", block_strategy},
                {"overlap", overlap}, {"global_counts", global_counts},
                {"alg", algorithm},   {"lambda", lambda},
                {"tau", tau},         {"mu", mu},
                {"eps_margin", margin}, {"unsafe", unsafe}};
    }
};

struct RunArgs {
    std::string mode = "simulate";  // simulate | threaded
    std::size_t workers = 1;
    std::string delay = "uniform";  // zero | uniform | scripted:...
    std::string control = "cyclic"; // cyclic | pernode
    double stop_rrel = 0.0;
    double stop_res = 0.0;
    double stop_true = 0.0;
    double max_epochs = 1000.0;
    std::int64_t metrics_every = 0;
    std::string log_rows = "auto";
    int service_min = 1;
    int service_max = 4;
    std::string out_dir;

    void attach(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "simulate | threaded")
            ->check(CLI::IsMember({"simulate", "threaded"}));
        cmd->add_option("--w", workers, "worker node count");
        cmd->add_option("--delay", delay,
                        "simulate-mode delays: zero | uniform | scripted:d1,d2,...");
        cmd->add_option("--control", control, "cyclic | pernode (simulate, w=1)")
            ->check(CLI::IsMember({"cyclic", "pernode"}));
        cmd->add_option("--stop-rrel", stop_rrel,
                        "stop when ||Ax-b|| < value * ||b||");
        cmd->add_option("--stop-res", stop_res, "stop when ||Ax-b|| < value");
        cmd->add_option("--stop-true", stop_true, "stop when ||x-x*|| < value");
        cmd->add_option("--max-epochs", max_epochs, "hard epoch cap");
        cmd->add_option("--metrics-every", metrics_every,
                        "steps between metric evaluations (0 = once per epoch)");
        cmd->add_option("--log-rows", log_rows, "auto | on | off")
            ->check(CLI::IsMember({"auto", "on", "off"}));
        cmd->add_option("--service-min", service_min, "min service ticks (pool sim)");
        cmd->add_option("--service-max", service_max, "max service ticks (pool sim)");
        const char* env = std::getenv("ASIKIT_OUTDIR");
        out_dir = env ? env : "";
        cmd->add_option("--out", out_dir, "output directory for run artifacts");
    }

    StoppingRule stopping(const TomographySystem& sys) const {
        if (stop_rrel > 0.0)
            return StoppingRule::residual(stop_rrel * norm(sys.b), max_epochs);
        if (stop_res > 0.0) return StoppingRule::residual(stop_res, max_epochs);
        if (stop_true > 0.0) return StoppingRule::true_error(stop_true, max_epochs);
        return StoppingRule::max_epochs(max_epochs);
    }

    nlohmann::json echo() const {
        return {{"mode", mode},          {"w", workers},
                {"delay", delay},        {"control", control},
                {"stop_rrel", stop_rrel}, {"stop_res", stop_res},
                {"stop_true", stop_true}, {"max_epochs", max_epochs},
                {"metrics_every", metrics_every},
                {"log_rows", log_rows},  {"service_min", service_min},
                {"service_max", service_max}, {"out", out_dir}};
    }
};

DelayModel make_delay_model(const std::string& spec, int tau, std::uint64_t seed) {
    if (spec == "zero" || tau == 0) return DelayModel::zero();
    if (spec == "uniform") return DelayModel::uniform(tau, seed ^ 0xde1a5ULL);
    if (spec.rfind("scripted:", 0) == 0) {
        std::vector<int> delays;
        for (std::size_t v : parse_size_list(spec.substr(9)))
            delays.push_back(static_cast<int>(v));
        return DelayModel::scripted(tau, delays);
    }
    throw InvalidParameter("unknown delay spec: " + spec);
}

RunRecord execute(const TomographySystem& sys, const SolverSetup& setup,
                  const SolverArgs& solver, const RunArgs& run, EngineOptions& opts) {
    const std::size_t m = setup.ops.size();
    if (run.mode == "threaded")
        return run_threaded(setup.ops, sys.view(), NodePool::round_robin(m, run.workers),
                            opts);
    if (run.workers > 1)
        return simulate_node_pool(setup.ops, sys.view(),
                                  NodePool::round_robin(m, run.workers),
                                  ServiceModel{run.service_min, run.service_max}, opts);
    ControlSequence control =
        run.control == "pernode"
            ? ControlSequence::per_node_cyclic(m, NodePool::round_robin(m, 1))
            : ControlSequence::cyclic(m);
    return simulate(setup.ops, sys.view(), std::move(control),
                    make_delay_model(run.delay, solver.tau, opts.seed), opts);
}

EngineOptions make_engine_options(const TomographySystem& sys, const SolverArgs& solver,
                                  const RunArgs& run, std::size_t m,
                                  std::uint64_t seed) {
    EngineOptions opts;
    opts.mode = solver.algorithm == "ekn" ? IterationMode::Ekn : IterationMode::Asi;
    opts.tau = solver.algorithm == "km" ? 0 : solver.tau;
    opts.schedule = solver.schedule();
    opts.stop = run.stopping(sys);
    opts.seed = seed;
    opts.metrics_every = run.metrics_every;
    opts.compute_final_op_residuals = true;
    if (run.log_rows == "on")
        opts.record_rows = true;
    else if (run.log_rows == "off")
        opts.record_rows = false;
    else
        opts.record_rows = m <= 512;  // row-per-step logs stay reasonable
    return opts;
}

void write_artifacts(const fs::path& dir, const RunRecord& record) {
    fs::create_directories(dir);
    record.write_csv(dir / "run.csv");
    record.write_summary_json(dir / "summary.json");
    write_vector(dir / "x_final.txt", record.final_iterate);
}

int cmd_solve(const ProblemArgs& problem, const SolverArgs& solver, RunArgs& run) {
    auto sys = problem.build();
    if (solver.algorithm == "km") {
        run.workers = 1;
        run.delay = "zero";
        run.mode = "simulate";
    }
    auto setup = solver.build(sys);
    EngineOptions opts =
        make_engine_options(sys, solver, run, setup.ops.size(), problem.seed);
    opts.config_echo = {{"command", "solve"},
                        {"problem", problem.echo()},
                        {"solver", solver.echo()},
                        {"run", run.echo()}};

    RunRecord record = execute(sys, setup, solver, run, opts);

    std::printf("engine=%s mode=%s m=%zu epochs=%.1f termination=%s\n",
                record.summary.engine.c_str(), record.summary.mode.c_str(),
                static_cast<std::size_t>(record.summary.operator_count),
                record.summary.epochs, to_string(record.summary.termination).c_str());
    std::printf("realized_tau=%d residual_b=%.3e max_op_residual=%.3e wall_ms=%.1f\n",
                record.summary.realized_tau, record.summary.final_residual_b,
                record.summary.final_max_op_residual, record.summary.wall_ms);
    if (!run.out_dir.empty()) write_artifacts(run.out_dir, record);
    return exit_code_for(record.summary.termination);
}

int cmd_bench(const ProblemArgs& problem, const SolverArgs& solver, RunArgs& run,
              const std::string& w_set_csv, int trials) {
    auto sys = problem.build();
    auto setup = solver.build(sys);
    const auto w_set = parse_size_list(w_set_csv);
    if (w_set.empty() || trials < 1)
        throw InvalidParameter("bench: need a worker set and at least one trial");

    struct Cell {
        double mean_epochs = 0.0, mean_wall = 0.0;
        int failures = 0;
    };
    std::map<std::string, std::map<std::size_t, Cell>> table;

    fs::path dir = run.out_dir.empty() ? fs::path("bench-out") : fs::path(run.out_dir);
    fs::create_directories(dir);
    std::ofstream raw(dir / "bench_runs.csv");
    raw << "algorithm,w,trial,epochs,wall_ms,termination\n";

    for (const std::string alg : {std::string("asi"), std::string("ekn")}) {
        for (std::size_t w : w_set) {
            Cell cell;
            for (int trial = 0; trial < trials; ++trial) {
                SolverArgs s = solver;
                s.algorithm = alg;
                RunArgs r = run;
                r.workers = w;
                EngineOptions opts = make_engine_options(
                    sys, s, r, setup.ops.size(), problem.seed + 1000ULL * trial);
                opts.record_rows = false;
                opts.compute_final_op_residuals = false;
                try {
                    RunRecord rec = execute(sys, setup, s, r, opts);
                    raw << alg << ',' << w << ',' << trial << ',' << rec.summary.epochs
                        << ',' << rec.summary.wall_ms << ','
                        << to_string(rec.summary.termination) << "\n";
                    if (rec.summary.termination == Termination::Converged) {
                        cell.mean_epochs += rec.summary.epochs;
                        cell.mean_wall += rec.summary.wall_ms;
                    } else {
                        ++cell.failures;
                    }
                } catch (const std::exception& e) {
                    raw << alg << ',' << w << ',' << trial << ",,," << "error\n";
                    std::fprintf(stderr, "bench run failed: %s\n", e.what());
                    ++cell.failures;
                }
            }
            const int ok = trials - cell.failures;
            if (ok > 0) {
                cell.mean_epochs /= ok;
                cell.mean_wall /= ok;
            }
            table[alg][w] = cell;
            std::printf("%s w=%zu mean_epochs=%.1f mean_wall_ms=%.1f failures=%d\n",
                        alg.c_str(), w, cell.mean_epochs, cell.mean_wall, cell.failures);
        }
    }

    // Table-style summary: one row per (method, measurement), one column per w.
    std::ofstream tab(dir / "bench_table.csv");
    tab << "method,measurement";
    for (std::size_t w : w_set) tab << ",w=" << w;
    tab << "\n";
    for (const auto& [alg, cells] : table) {
        tab << alg << ",epochs";
        for (std::size_t w : w_set) tab << ',' << cells.at(w).mean_epochs;
        tab << "\n" << alg << ",wall_ms";
        for (std::size_t w : w_set) tab << ',' << cells.at(w).mean_wall;
        tab << "\n" << alg << ",speedup";
        const double base = cells.at(w_set.front()).mean_wall;
        for (std::size_t w : w_set) {
            const double wall = cells.at(w).mean_wall;
            tab << ',' << (wall > 0.0 ? base / wall : 0.0);
        }
        tab << "\n";
    }
    std::printf("wrote %s and %s\n", (dir / "bench_runs.csv").c_str(),
                (dir / "bench_table.csv").c_str());
    return kOk;
}

int cmd_check(const ProblemArgs& problem, const SolverArgs& solver, int probe_trials) {
    auto sys = problem.build();
    auto setup = solver.build(sys);
    bool all_ok = true;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        all_ok = all_ok && ok;
    };

    {
        const auto zr = sys.A.zero_rows();
        const auto zc = sys.A.zero_cols();
        report(zr.empty() && zc.empty(), "nonzero-rows-and-columns",
               "zero rows: " + std::to_string(zr.size()) +
                   ", zero cols: " + std::to_string(zc.size()));
    }
    {
        const double drift = sys.A.row_norm_cache_drift();
        report(drift <= 1e-14, "row-norm-cache",
               "relative drift " + std::to_string(drift));
    }
    if (!sys.x_true.empty()) {
        const double res = sys.A.residual_norm(sys.x_true, sys.b);
        const double tol = 1e-10 * (1.0 + norm(sys.b));
        char buf[96];
        std::snprintf(buf, sizeof(buf), "||A x_true - b|| = %.3e (tol %.3e)", res, tol);
        report(res <= tol, "consistency", buf);
    }
    if (!setup.drop.blocks.empty()) {
        double worst = 0.0;
        bool all_converged = true;
        for (std::size_t t = 0; t < setup.drop.blocks.size(); ++t) {
            auto cert = spectral_certificate(*setup.drop.blocks[t], 500, 1e-10,
                                             0x5eed0000ULL + t);
            worst = std::max(worst, cert.rho);
            all_converged = all_converged && cert.converged;
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "max rho = %.12f over %zu blocks%s", worst,
                      setup.drop.blocks.size(),
                      all_converged ? "" : " (some certificates unavailable)");
        report(worst <= 1.0 + 1e-8, "spectral-certificates", buf);

        double worst_ratio = 0.0;
        for (std::size_t t = 0; t < setup.drop.blocks.size(); ++t) {
            DropYOperator u(setup.drop.blocks[t]);
            auto probe = nonexpansive_probe(
                u, std::max(1, probe_trials / static_cast<int>(setup.drop.blocks.size())),
                0xbeef00ULL + t);
            worst_ratio = std::max(worst_ratio, probe.max_ratio);
        }
        char buf2[96];
        std::snprintf(buf2, sizeof(buf2), "max pair ratio = %.12f", worst_ratio);
        report(worst_ratio <= 1.0 + 1e-10, "drop-nonexpansiveness", buf2);
    } else {
        double worst_ratio = 0.0;
        Rng pick(1);
        const int rows_to_probe =
            static_cast<int>(std::min<std::size_t>(setup.ops.size(), 64));
        const int per_row = std::max(1, probe_trials / rows_to_probe);
        for (int i = 0; i < rows_to_probe; ++i) {
            const auto idx = static_cast<std::size_t>(
                pick.uniform_int(0, static_cast<std::int64_t>(setup.ops.size()) - 1));
            auto probe = nonexpansive_probe(*setup.ops[idx], per_row, 0xabc000ULL + i);
            worst_ratio = std::max(worst_ratio, probe.max_ratio);
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "max pair ratio = %.12f", worst_ratio);
        report(worst_ratio <= 1.0 + 1e-10, "projection-nonexpansiveness", buf);
    }
    {
        auto control = ControlSequence::per_node_cyclic(
            setup.ops.size(), NodePool::round_robin(setup.ops.size(), 1));
        std::vector<std::size_t> stream;
        const std::size_t want = 3 * control.almost_cyclicality();
        for (std::size_t i = 0; i < want; ++i) stream.push_back(control.next());
        const bool ok = almost_cyclic_check(stream, setup.ops.size(),
                                            control.almost_cyclicality());
        report(ok, "almost-cyclic-dispatch",
               "window bound " + std::to_string(control.almost_cyclicality()));
    }
    return all_ok ? kOk : kAuditFailed;
}

int cmd_phantom(std::size_t side, std::size_t angles, std::size_t detectors,
                const std::string& ellipse_table, const std::string& out_dir) {
    if (out_dir.empty()) throw InvalidParameter("phantom: --out is required");
    std::vector<Ellipse> table;
    if (!ellipse_table.empty()) table = read_ellipse_table(ellipse_table);
    auto img = table.empty() ? make_phantom(side) : make_phantom(side, table);
    auto sys = make_projector(img, half_circle_angles(angles), detectors);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_pgm(dir / "phantom.pgm", img);
    write_ellipse_table(dir / "ellipses.json", img.table);
    auto paths = save_system(dir, sys);
    std::printf("phantom %zux%zu, %zu angles x %zu detectors -> %zux%zu system "
                "(%zu nnz)\n",
                side, side, angles, detectors, sys.A.rows(), sys.A.cols(), sys.A.nnz());
    std::printf("wrote %s, %s, %s, %s\n", (dir / "phantom.pgm").c_str(),
                paths.matrix.c_str(), paths.rhs.c_str(), paths.solution.c_str());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"asynchronous block-iterative solvers for sparse linear feasibility"};
    app.require_subcommand(1);

    ProblemArgs problem;
    SolverArgs solver;
    RunArgs run;

    auto* solve = app.add_subcommand("solve", "run one solve and write artifacts");
    problem.attach(solve);
    solver.attach(solve);
    run.attach(solve);

    auto* bench = app.add_subcommand("bench", "sweep worker counts, tabulate epochs");
    ProblemArgs bench_problem;
    SolverArgs bench_solver;
    RunArgs bench_run;
    std::string w_set = "1,2,4,8";
    int trials = 5;
    bench_problem.attach(bench);
    bench_solver.attach(bench);
    bench_run.attach(bench);
    bench->add_option("--w-set", w_set, "worker counts to sweep, comma separated");
    bench->add_option("--trials", trials, "trials per configuration");

    auto* check = app.add_subcommand("check", "audit operators, certificates, dispatch");
    ProblemArgs check_problem;
    SolverArgs check_solver;
    int probe_trials = 10000;
    check_problem.attach(check);
    check_solver.attach(check);
    check->add_option("--probe-trials", probe_trials, "sampled pairs for probes");

    auto* phantom = app.add_subcommand("phantom", "emit phantom image + system files");
    std::size_t ph_side = 128, ph_angles = 90, ph_detectors = 95;
    std::string ph_table, ph_out;
    phantom->add_option("--n", ph_side, "image side in pixels");
    phantom->add_option("--angles", ph_angles, "projection angle count");
    phantom->add_option("--detectors", ph_detectors, "detector count per angle");
    phantom->add_option("--ellipse-table", ph_table, "JSON ellipse table");
    const char* env = std::getenv("ASIKIT_OUTDIR");
    ph_out = env ? env : "";
    phantom->add_option("--out", ph_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(problem, solver, run);
        if (bench->parsed())
            return cmd_bench(bench_problem, bench_solver, bench_run, w_set, trials);
        if (check->parsed()) return cmd_check(check_problem, check_solver, probe_trials);
        if (phantom->parsed())
            return cmd_phantom(ph_side, ph_angles, ph_detectors, ph_table, ph_out);
    } catch (const IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kIo;
    } catch (const StalenessViolation& e) {
        std::fprintf(stderr, "staleness violation: %s\n", e.what());
        return kStaleness;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
