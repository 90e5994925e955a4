#include <benchmark/benchmark.h>

#include "asi/family.hpp"
#include "asi/phantom.hpp"
#include "asi/projector.hpp"
#include "asi/random_system.hpp"
#include "asi/rng.hpp"
#include "asi/simulate.hpp"

using namespace asi;

namespace {

const TomographySystem& phantom_system() {
    static TomographySystem sys = [] {
        auto img = make_phantom(64);
        return make_projector(img, half_circle_angles(90), 95);
    }();
    return sys;
}

void BM_combine_dense(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    Vector x(n), xhat(n), t(n), next(n);
    rng.fill_normal(x);
    rng.fill_normal(xhat);
    rng.fill_normal(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            combine_step_norm(IterationMode::Asi, 0.2, x, xhat, t, next));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_hyperplane_project(benchmark::State& state) {
    const auto& sys = phantom_system();
    Hyperplane h = Hyperplane::from_row(sys.A, 42, sys.b[42]);
    Rng rng(2);
    Vector x(sys.A.cols()), out(sys.A.cols());
    rng.fill_normal(x);
    for (auto _ : state) {
        h.project_into(x, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_row_action_step_sparse(benchmark::State& state) {
    const auto& sys = phantom_system();
    Hyperplane h = Hyperplane::from_row(sys.A, 42, sys.b[42]);
    HyperplaneProjector op(h);
    Rng rng(3);
    Vector x(sys.A.cols()), xhat(sys.A.cols()), next(sys.A.cols());
    rng.fill_normal(x);
    rng.fill_normal(xhat);
    Vector delta(h.cols().size());
    for (auto _ : state) {
        op.delta_values(xhat, delta);
        benchmark::DoNotOptimize(combine_step_sparse(IterationMode::Asi, 0.2, x, xhat,
                                                     h.cols(), delta, next));
    }
}

void BM_drop_block_apply(benchmark::State& state) {
    const auto& sys = phantom_system();
    auto fam = make_drop_family(sys.A, sys.b,
                                build_blocks(sys.A.rows(), 40, BlockStrategy::Contiguous));
    Rng rng(4);
    Vector x(sys.A.cols()), out(sys.A.cols());
    rng.fill_normal(x);
    for (auto _ : state) {
        fam.blocks[7]->apply_x(x, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_spectral_certificate(benchmark::State& state) {
    RandomSystemSpec spec;
    spec.rows = 60;
    spec.cols = 40;
    spec.nnz_per_row = 5;
    spec.seed = 5;
    auto sys = make_random_system(spec);
    std::vector<std::size_t> rows(sys.A.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    DropBlockOperator block(sys.A, sys.b, rows);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_certificate(block));
    }
}

void BM_simulate_epoch_drop(benchmark::State& state) {
    const auto& sys = phantom_system();
    auto setup = make_solver_setup(OperatorFamily::Drop, sys.A, sys.b, 40);
    for (auto _ : state) {
        EngineOptions opts;
        opts.tau = 4;
        opts.schedule = StepSchedule::constant(0.5).clamped(4);
        opts.stop = StoppingRule::max_epochs(static_cast<double>(state.range(0)));
        opts.record_rows = false;
        auto rec = simulate(setup.ops, sys.view(), ControlSequence::cyclic(40),
                            DelayModel::uniform(4, 9), opts);
        benchmark::DoNotOptimize(rec.summary.epochs);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 40);
}

} // namespace

BENCHMARK(BM_combine_dense)->Arg(4096)->Arg(16384);
BENCHMARK(BM_hyperplane_project);
BENCHMARK(BM_row_action_step_sparse);
BENCHMARK(BM_drop_block_apply);
BENCHMARK(BM_spectral_certificate);
BENCHMARK(BM_simulate_epoch_drop)->Arg(10);

BENCHMARK_MAIN();
