#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asi/family.hpp"
#include "asi/random_system.hpp"
#include "asi/simulate.hpp"

using namespace asi;

namespace {

TomographySystem small_system(std::uint64_t seed) {
    RandomSystemSpec spec;
    spec.rows = 40;
    spec.cols = 12;
    spec.nnz_per_row = 4;
    spec.seed = seed;
    return make_random_system(spec);
}

EngineOptions base_options(const TomographySystem& sys) {
    EngineOptions opts;
    opts.schedule = StepSchedule::constant(0.5);
    opts.stop = StoppingRule::true_error(1e-8, 400.0);
    opts.xi_reference = sys.x_true;
    return opts;
}

} // namespace

TEST_CASE("identical seeds produce byte-identical records") {
    auto sys = small_system(11);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);

    EngineOptions opts = base_options(sys);
    opts.tau = 3;
    opts.schedule = StepSchedule::constant(0.5).clamped(3);
    opts.metrics_every = 1;
    opts.audit_inertial = true;

    auto run = [&] {
        return simulate(setup.ops, sys.view(), ControlSequence::cyclic(setup.ops.size()),
                        DelayModel::uniform(3, 1234), opts);
    };
    RunRecord r1 = run();
    RunRecord r2 = run();
    CHECK(r1.csv() == r2.csv());
    CHECK(r1.summary.epochs == r2.summary.epochs);
    CHECK(r1.summary.applied_steps > 0);
    CHECK(r1.summary.inertial_audit_failures == 0);
}

TEST_CASE("zero-delay single-operator run reproduces the classic iteration") {
    HyperplaneProjector op(Hyperplane::from_dense(Vector{1.0, 2.0, -1.0}, 3.0));
    std::vector<OperatorPtr> ops = {
        std::make_shared<HyperplaneProjector>(Hyperplane::from_dense(Vector{1.0, 2.0, -1.0}, 3.0))};

    const double lambda = 0.5;
    EngineOptions opts;
    opts.schedule = StepSchedule::constant(lambda);
    opts.stop = StoppingRule::max_epochs(100.0);
    opts.x0 = {5.0, -1.0, 2.0};

    Vector km = opts.x0;
    Vector t(3), next(3);
    std::size_t compared = 0;
    StepObserver observer = [&](const StepEvent& ev) {
        ops[0]->apply(km, t);
        convex_part_into(lambda, km, t, next);
        km = next;
        REQUIRE(ev.x_next.size() == km.size());
        for (std::size_t j = 0; j < km.size(); ++j) CHECK(ev.x_next[j] == km[j]);
        ++compared;
    };

    auto record = simulate(ops, ProblemView{}, ControlSequence::cyclic(1),
                           DelayModel::zero(), opts, observer);
    CHECK(compared == 100);
    CHECK(record.summary.realized_tau == 0);
}

TEST_CASE("scripted delays are realized and capped") {
    auto sys = small_system(21);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);

    EngineOptions opts = base_options(sys);
    opts.tau = 2;
    opts.schedule = StepSchedule::constant(0.5).clamped(2);
    opts.stop = StoppingRule::max_epochs(4.0);

    auto record = simulate(setup.ops, sys.view(), ControlSequence::cyclic(setup.ops.size()),
                           DelayModel::scripted(2, {0, 1, 2, 1}), opts);
    CHECK(realized_tau(record) == 2);
    CHECK(record.summary.warmup_steps == 2);
    for (const auto& row : record.rows) CHECK(row.delay <= 2);
}

TEST_CASE("xi decreases and the staleness inequality holds along theorem-regime runs") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto sys = small_system(100 + seed);
        auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);

        EngineOptions opts = base_options(sys);
        opts.tau = 4;
        opts.schedule = StepSchedule::constant(max_step_size(4, 1e-3));
        opts.audit_staleness_bound = true;
        opts.audit_inertial = true;
        opts.stop = StoppingRule::max_epochs(30.0);

        auto record = simulate(setup.ops, sys.view(),
                               ControlSequence::cyclic(setup.ops.size()),
                               DelayModel::uniform(4, 555 + seed), opts);
        CHECK(record.summary.xi_violations == 0);
        CHECK(record.summary.xi_bound_violations == 0);
        CHECK(record.summary.staleness_bound_failures == 0);
        CHECK(record.summary.inertial_audit_failures == 0);
        CHECK(record.summary.final_xi < record.rows.front().xi + 1e-12);
    }
}

TEST_CASE("divergence is detected and reported") {
    struct Doubling final : FixedPointOperator {
        std::size_t dimension() const override { return 2; }
        void apply(std::span<const double> x, std::span<double> out) const override {
            out[0] = 3.0 * x[0];
            out[1] = 3.0 * x[1];
        }
    };
    std::vector<OperatorPtr> ops = {std::make_shared<Doubling>()};
    EngineOptions opts;
    opts.schedule = StepSchedule::constant(0.9);
    opts.stop = StoppingRule::max_epochs(1e6);
    opts.x0 = {1.0, 1.0};
    auto record = simulate(ops, ProblemView{}, ControlSequence::cyclic(1),
                           DelayModel::zero(), opts);
    CHECK(record.summary.termination == Termination::Diverged);
    CHECK(record.summary.epochs < 1e5);
}

TEST_CASE("node-pool emulation") {
    auto sys = small_system(31);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);
    const std::size_t m = setup.ops.size();

    SUBCASE("one worker matches the zero-delay simulator") {
        EngineOptions opts = base_options(sys);
        opts.stop = StoppingRule::true_error(1e-8, 400.0);

        auto direct = simulate(setup.ops, sys.view(), ControlSequence::cyclic(m),
                               DelayModel::zero(), opts);
        auto pooled = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 1),
                                         ServiceModel{}, opts);
        CHECK(pooled.summary.realized_tau == 0);
        CHECK(std::abs(pooled.summary.epochs - direct.summary.epochs) <= 1.0);
        CHECK(pooled.summary.termination == Termination::Converged);
    }

    SUBCASE("realized delays grow with workers but respect the cap") {
        EngineOptions opts = base_options(sys);
        opts.tau = 16;
        opts.schedule = StepSchedule::constant(0.12);
        opts.stop = StoppingRule::true_error(1e-6, 400.0);

        std::vector<std::size_t> applied_stream;
        StepObserver observer = [&](const StepEvent& ev) {
            applied_stream.push_back(ev.op_index);
        };
        auto record = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 4),
                                         ServiceModel{1, 4}, opts, observer);
        CHECK(record.summary.termination == Termination::Converged);
        CHECK(record.summary.realized_tau >= 1);
        CHECK(record.summary.realized_tau <= 16);

        // The applied stream is almost cyclic with the pool's merge bound
        // widened by the service-time spread (exhaustive window scan).
        NodePool pool = NodePool::round_robin(m, 4);
        const std::size_t bound = pool.merge_bound() * 4 + pool.node_count();
        if (applied_stream.size() >= bound)
            CHECK(almost_cyclic_check(applied_stream, m, bound));
    }

    SUBCASE("a tight cap forces recomputes but not failure") {
        EngineOptions opts = base_options(sys);
        opts.tau = 0;
        opts.schedule = StepSchedule::constant(0.5);
        opts.stop = StoppingRule::true_error(1e-8, 400.0);

        auto record = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 3),
                                         ServiceModel{1, 2}, opts);
        CHECK(record.summary.staleness_refusals > 0);
        CHECK(record.summary.realized_tau == 0);
        CHECK(record.summary.termination == Termination::Converged);
    }

    SUBCASE("pool emulation is deterministic per seed") {
        EngineOptions opts = base_options(sys);
        opts.tau = 8;
        opts.seed = 777;
        opts.stop = StoppingRule::true_error(1e-8, 400.0);
        auto r1 = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 3),
                                     ServiceModel{1, 4}, opts);
        auto r2 = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 3),
                                     ServiceModel{1, 4}, opts);
        CHECK(r1.csv() == r2.csv());
    }
}

TEST_CASE("ekn and asi coincide bitwise at zero delay") {
    auto sys = small_system(41);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);

    EngineOptions opts = base_options(sys);
    opts.stop = StoppingRule::max_epochs(6.0);

    opts.mode = IterationMode::Asi;
    auto ra = simulate(setup.ops, sys.view(), ControlSequence::cyclic(setup.ops.size()),
                       DelayModel::zero(), opts);
    opts.mode = IterationMode::Ekn;
    auto re = simulate(setup.ops, sys.view(), ControlSequence::cyclic(setup.ops.size()),
                       DelayModel::zero(), opts);
    REQUIRE(ra.final_iterate.size() == re.final_iterate.size());
    for (std::size_t j = 0; j < ra.final_iterate.size(); ++j)
        CHECK(ra.final_iterate[j] == re.final_iterate[j]);
}

TEST_CASE("ekn needs at least as many epochs as asi under realized delays") {
    auto sys = small_system(51);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);
    const std::size_t m = setup.ops.size();

    auto epochs_for = [&](IterationMode mode) {
        EngineOptions opts;
        opts.mode = mode;
        opts.tau = 32;
        opts.schedule = StepSchedule::constant(0.25);
        opts.stop = StoppingRule::true_error(1e-7, 2000.0);
        opts.seed = 5;
        opts.record_rows = false;
        auto rec = simulate_node_pool(setup.ops, sys.view(), NodePool::round_robin(m, 4),
                                      ServiceModel{1, 4}, opts);
        REQUIRE(rec.summary.termination == Termination::Converged);
        return rec.summary.epochs;
    };
    const double asi = epochs_for(IterationMode::Asi);
    const double ekn = epochs_for(IterationMode::Ekn);
    CHECK(ekn >= asi);
}

TEST_CASE("successive differences vanish on a run driven to completion") {
    auto sys = small_system(61);
    auto setup = make_solver_setup(OperatorFamily::Art, sys.A, sys.b);

    EngineOptions opts;
    opts.tau = 2;
    opts.schedule = StepSchedule::constant(0.5).clamped(2);
    opts.stop = StoppingRule::true_error(1e-13, 3000.0);
    opts.record_rows = false;

    double last_diff = 1.0;
    StepObserver observer = [&](const StepEvent& ev) {
        last_diff = dist(ev.x_next, ev.x_prev);
    };
    auto rec = simulate(setup.ops, sys.view(), ControlSequence::cyclic(setup.ops.size()),
                        DelayModel::uniform(2, 111), opts, observer);
    REQUIRE(rec.summary.termination == Termination::Converged);
    CHECK(last_diff < 1e-10);
}
