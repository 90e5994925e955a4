#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asi/phantom.hpp"
#include "asi/projector.hpp"
#include "asi/family.hpp"
#include "asi/random_system.hpp"
#include "asi/simulate.hpp"
#include "asi/threaded.hpp"

using namespace asi;

namespace {

TomographySystem test_system(std::uint64_t seed) {
    RandomSystemSpec spec;
    spec.rows = 60;
    spec.cols = 20;
    spec.nnz_per_row = 5;
    spec.seed = seed;
    return make_random_system(spec);
}

} // namespace

TEST_CASE("single worker behaves like the synchronous simulator") {
    auto sys = test_system(1);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);
    const std::size_t m = setup.ops.size();

    EngineOptions opts;
    opts.schedule = StepSchedule::constant(0.8);
    opts.stop = StoppingRule::true_error(1e-8, 500.0);
    opts.tau = 0;

    auto sim = simulate(setup.ops, sys.view(), ControlSequence::cyclic(m),
                        DelayModel::zero(), opts);
    auto thr = run_threaded(setup.ops, sys.view(), NodePool::round_robin(m, 1), opts);

    CHECK(thr.summary.termination == Termination::Converged);
    CHECK(thr.summary.realized_tau == 0);
    CHECK(std::abs(thr.summary.epochs - sim.summary.epochs) <= 1.0);
}

TEST_CASE("four workers converge under the staleness cap") {
    auto sys = test_system(2);
    auto setup = make_solver_setup(OperatorFamily::Drop, sys.A, sys.b, 6);
    const std::size_t m = setup.ops.size();

    EngineOptions opts;
    opts.tau = 4;
    opts.schedule = StepSchedule::constant(0.5).clamped(4);
    opts.stop = StoppingRule::residual(1e-8 * (1.0 + norm(sys.b)), 3000.0);
    opts.audit_inertial = true;

    auto record = run_threaded(setup.ops, sys.view(), NodePool::round_robin(m, 4), opts);
    CHECK(record.summary.termination == Termination::Converged);
    CHECK(record.summary.realized_tau <= 4);
    CHECK(record.summary.inertial_audit_failures == 0);
    for (const auto& row : record.rows) CHECK(row.delay <= 4);
    CHECK(record.delays.total() == record.summary.applied_steps);
}

TEST_CASE("a dropped transmission is retried and the run still converges") {
    auto sys = test_system(3);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);
    const std::size_t m = setup.ops.size();

    EngineOptions opts;
    opts.tau = 6;
    opts.schedule = StepSchedule::constant(0.5).clamped(6);
    opts.stop = StoppingRule::true_error(1e-7, 2000.0);

    FaultPlan faults;
    faults.node = 1;
    faults.after = 5;
    faults.count = 3;

    auto record = run_threaded(setup.ops, sys.view(), NodePool::round_robin(m, 3), opts,
                               faults);
    CHECK(record.summary.termination == Termination::Converged);
    CHECK(record.summary.dropped_responses == 3);
    CHECK(record.summary.final_true_error < 1e-7);
}

TEST_CASE("persistent failure beyond the retry cap aborts with diagnostics") {
    auto sys = test_system(4);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);
    const std::size_t m = setup.ops.size();

    EngineOptions opts;
    opts.tau = 2;
    opts.schedule = StepSchedule::constant(0.5).clamped(2);
    opts.stop = StoppingRule::true_error(1e-7, 2000.0);

    FaultPlan faults;
    faults.node = 0;
    faults.after = 0;
    faults.count = 1 << 20;  // never recovers

    auto record = run_threaded(setup.ops, sys.view(), NodePool::round_robin(m, 2), opts,
                               faults, /*max_retries=*/8);
    CHECK(record.summary.termination == Termination::Aborted);
    CHECK(record.summary.dropped_responses >= 8);
}

TEST_CASE("threaded drop run on the projector system under the clamped step") {
    auto img = make_phantom(32);
    auto sys = make_projector(img, half_circle_angles(30), 40);
    auto setup = make_solver_setup(OperatorFamily::Drop, sys.A, sys.b, 20);

    EngineOptions opts;
    opts.tau = 4;
    opts.schedule = StepSchedule::constant(0.5).clamped(4);
    opts.stop = StoppingRule::residual(0.02 * norm(sys.b), 3000.0);

    auto rec = run_threaded(setup.ops, sys.view(), NodePool::round_robin(20, 4), opts);
    CHECK(rec.summary.termination == Termination::Converged);
    CHECK(rec.summary.realized_tau <= 4);
}
