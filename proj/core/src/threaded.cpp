#include "asi/threaded.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "run_driver.hpp"

namespace asi {

namespace {

struct Task {
    std::size_t op_index = 0;
    std::int64_t version = 0;
    std::shared_ptr<const Vector> snapshot;
    bool shutdown = false;
};

struct Response {
    int node = 0;
    std::size_t op_index = 0;
    std::int64_t version = 0;
    std::shared_ptr<const Vector> snapshot;
    Vector image;  // T_i(snapshot)
    bool failed = false;
    double wall_ms = 0.0;
};

/// Single-slot mailbox per worker.
struct Mailbox {
    std::mutex mu;
    std::condition_variable cv;
    std::optional<Task> task;

    void put(Task t) {
        {
            std::lock_guard lock(mu);
            task = std::move(t);
        }
        cv.notify_one();
    }
    Task take() {
        std::unique_lock lock(mu);
        cv.wait(lock, [this] { return task.has_value(); });
        Task t = std::move(*task);
        task.reset();
        return t;
    }
};

struct ResponseQueue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Response> items;

    void push(Response r) {
        {
            std::lock_guard lock(mu);
            items.push_back(std::move(r));
        }
        cv.notify_one();
    }
    std::vector<Response> drain_blocking() {
        std::unique_lock lock(mu);
        cv.wait(lock, [this] { return !items.empty(); });
        std::vector<Response> out(std::make_move_iterator(items.begin()),
                                  std::make_move_iterator(items.end()));
        items.clear();
        return out;
    }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

} // namespace

RunRecord run_threaded(std::span<const OperatorPtr> ops, const ProblemView& problem,
                       const NodePool& pool, const EngineOptions& opts,
                       const FaultPlan& faults, int max_retries) {
    pool.validate(ops.size());
    detail::require_param(max_retries >= 1, "threaded: retry cap must be positive");

    const auto start = std::chrono::steady_clock::now();
    // ring_tau = 0: snapshots travel with the tasks, the ring only holds the
    // master's current iterate.
    detail::RunDriver driver(ops, problem, opts, "threaded", 0, {});

    const std::size_t w = pool.node_count();
    std::vector<Mailbox> mailboxes(w);
    ResponseQueue responses;

    std::vector<std::thread> workers;
    workers.reserve(w);
    for (std::size_t ell = 0; ell < w; ++ell) {
        workers.emplace_back([&, ell] {
            std::int64_t sent = 0;
            while (true) {
                Task task = mailboxes[ell].take();
                if (task.shutdown) return;
                Response r;
                r.node = static_cast<int>(ell);
                r.op_index = task.op_index;
                r.version = task.version;
                r.snapshot = task.snapshot;
                r.image.resize(task.snapshot->size());
                ops[task.op_index]->apply(*task.snapshot, r.image);
                r.wall_ms = elapsed_ms(start);
                if (faults.node == static_cast<int>(ell) && sent >= faults.after &&
                    sent < faults.after + faults.count)
                    r.failed = true;  // transmission lost on the way back
                ++sent;
                responses.push(std::move(r));
            }
        });
    }

    std::vector<std::size_t> cursor(w, 0);
    std::vector<int> retries(w, 0);
    std::int64_t version = 1;

    auto dispatch = [&](std::size_t ell, bool advance_cursor) {
        if (advance_cursor)
            cursor[ell] = (cursor[ell] + 1) % pool.assignment[ell].size();
        Task t;
        t.op_index = pool.assignment[ell][cursor[ell]];
        t.version = version;
        auto x = driver.current();
        t.snapshot = std::make_shared<const Vector>(x.begin(), x.end());
        mailboxes[ell].put(std::move(t));
    };
    for (std::size_t ell = 0; ell < w; ++ell) dispatch(ell, /*advance_cursor=*/false);

    std::int64_t theta = 0;
    std::size_t in_flight = w;
    auto wind_down = [&] {
        while (in_flight > 0) {
            auto batch = responses.drain_blocking();
            in_flight -= batch.size();
        }
        for (std::size_t ell = 0; ell < w; ++ell) {
            Task t;
            t.shutdown = true;
            mailboxes[ell].put(std::move(t));
        }
        for (auto& th : workers) th.join();
    };

    try {
        while (!driver.stopped()) {
            auto batch = responses.drain_blocking();
            std::stable_sort(batch.begin(), batch.end(), [](const Response& a,
                                                            const Response& b) {
                return a.node < b.node;
            });
            ++theta;
            for (Response& r : batch) {
                --in_flight;
                const std::size_t ell = static_cast<std::size_t>(r.node);
                if (driver.stopped()) continue;  // drain without dispatching
                if (r.failed) {
                    driver.note_drop();
                    if (++retries[ell] > max_retries) {
                        driver.abort_run(Termination::Aborted);
                        continue;
                    }
                    dispatch(ell, /*advance_cursor=*/false);
                    ++in_flight;
                    continue;
                }
                retries[ell] = 0;
                const int staleness = static_cast<int>(version - r.version);
                if (staleness > opts.tau) {
                    driver.note_refusal();
                    dispatch(ell, /*advance_cursor=*/false);
                    ++in_flight;
                    continue;
                }
                const bool keep_going = driver.apply_external(
                    r.op_index, *r.snapshot, r.image, staleness, r.node, theta, r.wall_ms);
                ++version;
                if (keep_going) {
                    dispatch(ell, /*advance_cursor=*/true);
                    ++in_flight;
                }
            }
            if (driver.stopped()) break;
        }
    } catch (...) {
        wind_down();
        throw;
    }
    wind_down();
    return driver.finish(elapsed_ms(start));
}

} // namespace asi
