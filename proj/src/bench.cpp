#include "streamfarm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "streamfarm/backoff.hpp"
#include "streamfarm/errors.hpp"
#include "streamfarm/farm.hpp"
#include "streamfarm/slab_pool.hpp"
#include "streamfarm/stream_item.hpp"

namespace streamfarm::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

volatile std::uint64_t spin_sink = 0;

double timed_spin_micros(std::uint64_t iters) {
    auto t0 = Clock::now();
    spin_for(iters);
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::micro>(t1 - t0).count();
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_spin_micros(std::uint64_t iters, int trials) {
    std::vector<double> t(static_cast<std::size_t>(trials));
    for (auto& x : t) x = timed_spin_micros(iters);
    return median_of(std::move(t));
}

// ---- workload pieces shared by every engine ----

struct TaskAllocator {
    // Pool mode recycles from a slab pool sized to the farm's in-flight
    // bound; System mode news/deletes every task.
    explicit TaskAllocator(Alloc mode, std::size_t in_flight_bound)
        : mode_(mode) {
        if (mode_ == Alloc::Pool)
            pool_ = std::make_unique<SlabPool>(sizeof(SyntheticTask), in_flight_bound,
                                               /*n_releasers=*/1);
    }

    SyntheticTask* acquire() {
        if (mode_ == Alloc::System) return new SyntheticTask;
        Backoff back;
        void* p = pool_->acquire();
        while (p == nullptr) {  // collector is still returning buffers
            back.pause();
            p = pool_->acquire();
        }
        return static_cast<SyntheticTask*>(p);
    }

    void release(SyntheticTask* t) {
        if (mode_ == Alloc::System) {
            delete t;
        } else {
            pool_->release(pool_->releaser(0), t);
        }
    }

    Alloc mode_;
    std::unique_ptr<SlabPool> pool_;
};

void fill_task(SyntheticTask* t, std::uint64_t seq) {
    t->seq = seq;
    for (std::uint64_t k = 0; k < 10; ++k) t->words[k] = seq + k;
}

void work_task(SyntheticTask* t, std::uint64_t spin_iters) {
    for (std::uint64_t k = 0; k < 10; ++k) t->words[k] += 1;
    spin_for(spin_iters);
}

// Returns false on any content mismatch.
bool check_task(const SyntheticTask* t) {
    for (std::uint64_t k = 0; k < 10; ++k)
        if (t->words[k] != t->seq + k + 1) return false;
    return true;
}

struct RunOutcome {
    double seconds = 0.0;
    std::uint64_t received = 0;
    std::uint64_t seq_sum = 0;
    bool content_ok = true;
};

void require_conservation(const BenchConfig& cfg, const RunOutcome& out, const char* what) {
    if (out.received != cfg.n_tasks)
        throw IntegrityError(std::string(what) + ": collector saw " +
                             std::to_string(out.received) + " of " +
                             std::to_string(cfg.n_tasks) + " tasks");
    if (cfg.verify) {
        const std::uint64_t n = cfg.n_tasks;
        const std::uint64_t want = n ? (n - 1) * n / 2 : 0;
        if (!out.content_ok)
            throw IntegrityError(std::string(what) + ": task words corrupted in flight");
        if (out.seq_sum != want)
            throw IntegrityError(std::string(what) + ": seq checksum mismatch (duplicate or lost task)");
    }
}

// ---- sequential reference ----

RunOutcome sequential_once(const BenchConfig& cfg, std::uint64_t spin_iters) {
    TaskAllocator alloc(cfg.alloc, 4);
    RunOutcome out;
    auto t0 = Clock::now();
    for (std::uint64_t seq = 0; seq < cfg.n_tasks; ++seq) {
        SyntheticTask* t = alloc.acquire();
        fill_task(t, seq);
        work_task(t, spin_iters);
        if (cfg.verify && !check_task(t)) out.content_ok = false;
        out.seq_sum += t->seq;
        ++out.received;
        alloc.release(t);
    }
    out.seconds = seconds_between(t0, Clock::now());
    return out;
}

// ---- lockfree engine: the SPSC-composed farm ----

RunOutcome lockfree_once(const BenchConfig& cfg, std::uint64_t spin_iters) {
    const std::size_t bound =
        2 * cfg.n_workers * cfg.channel_capacity + cfg.n_workers + 8;
    TaskAllocator alloc(cfg.alloc, bound);

    std::uint64_t next = 0;
    RunOutcome out;

    Service emitter = [&](void*) -> Verdict {
        if (next >= cfg.n_tasks) return Verdict::end();
        SyntheticTask* t = alloc.acquire();
        fill_task(t, next++);
        return Verdict::emit(t);
    };
    Service worker = [&](void* p) -> Verdict {
        work_task(static_cast<SyntheticTask*>(p), spin_iters);
        return Verdict::emit(p);
    };
    Service collector = [&](void* p) -> Verdict {
        auto* t = static_cast<SyntheticTask*>(p);
        if (cfg.verify && !check_task(t)) out.content_ok = false;
        out.seq_sum += t->seq;
        ++out.received;
        alloc.release(t);
        return Verdict::absorb();
    };

    FarmConfig fc;
    fc.n_workers = cfg.n_workers;
    fc.channel_capacity = cfg.channel_capacity;

    Farm farm(emitter, worker, collector, fc);
    auto t0 = Clock::now();
    farm.run();
    farm.wait();
    out.seconds = seconds_between(t0, Clock::now());
    return out;
}

// ---- mutex baseline engine ----

// Textbook bounded buffer: every operation takes the lock and signals a
// condition variable. This is the fence-and-syscall cost the lockfree
// engine exists to avoid.
class BoundedMutexQueue {
public:
    explicit BoundedMutexQueue(std::size_t capacity) : capacity_(capacity) {}

    void push(void* item) {
        std::unique_lock<std::mutex> lock(m_);
        not_full_.wait(lock, [&] { return q_.size() < capacity_; });
        q_.push_back(item);
        not_empty_.notify_one();
    }

    void* pop() {
        std::unique_lock<std::mutex> lock(m_);
        not_empty_.wait(lock, [&] { return !q_.empty(); });
        void* item = q_.front();
        q_.pop_front();
        not_full_.notify_one();
        return item;
    }

private:
    std::size_t capacity_;
    std::deque<void*> q_;
    std::mutex m_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
};

RunOutcome mutex_once(const BenchConfig& cfg, std::uint64_t spin_iters) {
    const std::size_t bound =
        2 * cfg.channel_capacity * cfg.n_workers + cfg.n_workers + 8;
    TaskAllocator alloc(cfg.alloc, bound);
    // Same aggregate buffering as the farm's per-worker rings.
    BoundedMutexQueue in(cfg.channel_capacity * cfg.n_workers);
    BoundedMutexQueue done(cfg.channel_capacity * cfg.n_workers);

    RunOutcome out;
    auto t0 = Clock::now();

    std::thread emitter([&] {
        for (std::uint64_t seq = 0; seq < cfg.n_tasks; ++seq) {
            SyntheticTask* t = alloc.acquire();
            fill_task(t, seq);
            in.push(t);
        }
        for (std::size_t w = 0; w < cfg.n_workers; ++w) in.push(eos());
    });

    std::vector<std::thread> workers;
    workers.reserve(cfg.n_workers);
    for (std::size_t w = 0; w < cfg.n_workers; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                void* p = in.pop();
                if (is_eos(p)) {
                    done.push(p);
                    return;
                }
                work_task(static_cast<SyntheticTask*>(p), spin_iters);
                done.push(p);
            }
        });
    }

    std::thread collector([&] {
        std::size_t eos_seen = 0;
        while (eos_seen < cfg.n_workers) {
            void* p = done.pop();
            if (is_eos(p)) {
                ++eos_seen;
                continue;
            }
            auto* t = static_cast<SyntheticTask*>(p);
            if (cfg.verify && !check_task(t)) out.content_ok = false;
            out.seq_sum += t->seq;
            ++out.received;
            alloc.release(t);
        }
    });

    emitter.join();
    for (auto& w : workers) w.join();
    collector.join();
    out.seconds = seconds_between(t0, Clock::now());
    return out;
}

// ---- repetition protocol ----

double median_seconds(const BenchConfig& cfg,
                      const std::function<RunOutcome(const BenchConfig&, std::uint64_t)>& once,
                      std::uint64_t spin_iters, const char* what) {
    std::vector<double> times;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        RunOutcome out = once(cfg, spin_iters);
        require_conservation(cfg, out, what);
        times.push_back(out.seconds);
    }
    if (times.size() > 1) times.erase(times.begin());  // warm-up
    return median_of(std::move(times));
}

double sequential_median(const BenchConfig& cfg, std::uint64_t spin_iters) {
    // One sequential baseline per (tc, n_tasks, alloc, reps) serves every
    // worker count and engine in a sweep.
    using Key = std::tuple<double, std::size_t, int, int>;
    static std::map<Key, double> memo;
    static std::mutex memo_mutex;

    Key key{cfg.tc_micros, cfg.n_tasks, static_cast<int>(cfg.alloc), cfg.repetitions};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    double t = median_seconds(cfg, sequential_once, spin_iters, "sequential reference");
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(key, t);
    return t;
}

std::uint64_t calibrated_iters(double tc_micros) {
    if (tc_micros == 0.0) return 0;
    static std::map<double, std::uint64_t> memo;
    static std::mutex memo_mutex;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(tc_micros);
        if (it != memo.end()) return it->second;
    }
    std::uint64_t iters = calibrate_spin(tc_micros);
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(tc_micros, iters);
    return iters;
}

}  // namespace

const char* engine_name(Engine e) {
    return e == Engine::Lockfree ? "lockfree" : "mutex";
}

void spin_for(std::uint64_t iterations) {
    // Serial multiply chain: each step depends on the last, so the loop
    // runs at a fixed rate the optimizer cannot shorten. The volatile
    // sink defeats dead-code elimination.
    std::uint64_t x = spin_sink + 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t i = 0; i < iterations; ++i)
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    spin_sink = x;
}

std::uint64_t calibrate_spin(double target_micros) {
    if (!(target_micros > 0.0))
        throw std::invalid_argument("calibrate_spin: target must be > 0");

    // Estimate the per-iteration rate on a block big enough to dwarf
    // clock resolution, then refine at the actual size.
    const std::uint64_t probe = 1u << 16;
    double probe_us = median_spin_micros(probe, 9);
    if (probe_us <= 0.0) probe_us = 1e-3;

    const double tolerance = target_micros < 2.0 ? 0.20 : 0.05;
    std::uint64_t iters = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(probe * target_micros / probe_us)));

    std::uint64_t best_iters = iters;
    double best_err = std::numeric_limits<double>::infinity();
    double best_us = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        double med = median_spin_micros(iters, 21);
        double err = std::abs(med - target_micros) / target_micros;
        if (err < best_err) {
            best_err = err;
            best_iters = iters;
            best_us = med;
        }
        if (err <= tolerance) return iters;
        auto next = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(std::llround(iters * target_micros / med)));
        if (next == iters) next = med > target_micros && iters > 1 ? iters - 1 : iters + 1;
        iters = next;
    }
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "calibrate_spin: could not reach %.0f%% of %.3f us (best %.3f us)",
                  tolerance * 100.0, target_micros, best_us);
    throw CalibrationError(msg, best_iters, best_us);
}

SpeedupRecord run_bench(const BenchConfig& cfg) {
    if (cfg.tc_micros < 0.0)
        throw std::invalid_argument("run_bench: tc_micros must be >= 0");
    if (cfg.repetitions < 1)
        throw std::invalid_argument("run_bench: repetitions must be >= 1");

    const std::uint64_t spin_iters = calibrated_iters(cfg.tc_micros);
    const double t_seq = sequential_median(cfg, spin_iters);

    SpeedupRecord rec;
    rec.engine = engine_name(cfg.engine);
    rec.tc_micros = cfg.tc_micros;
    rec.n_workers = cfg.n_workers;
    rec.n_tasks = cfg.n_tasks;

    if (cfg.n_workers == 0) {
        rec.median_seconds = t_seq;
        rec.speedup = 1.0;
        rec.tasks_per_second = t_seq > 0.0 ? cfg.n_tasks / t_seq : 0.0;
        return rec;
    }

    auto once = cfg.engine == Engine::Lockfree ? lockfree_once : mutex_once;
    rec.median_seconds = median_seconds(cfg, once, spin_iters, engine_name(cfg.engine));
    rec.speedup = rec.median_seconds > 0.0 ? t_seq / rec.median_seconds : 0.0;
    rec.tasks_per_second =
        rec.median_seconds > 0.0 ? cfg.n_tasks / rec.median_seconds : 0.0;

    // A speedup beyond the worker count (plus measurement slack) means the
    // timer or the reference run is broken, not that the farm is fast.
    const double sanity = static_cast<double>(cfg.n_workers) * 1.15;
    if (rec.speedup > sanity)
        throw IntegrityError("run_bench: speedup " + std::to_string(rec.speedup) +
                             " exceeds " + std::to_string(cfg.n_workers) +
                             " workers x 1.15 sanity bound");
    return rec;
}

std::vector<SpeedupRecord> sweep(const std::vector<double>& grains,
                                 const std::vector<std::size_t>& workers,
                                 const std::vector<Engine>& engines,
                                 BenchConfig base,
                                 const std::function<void(const SpeedupRecord&)>& on_record) {
    if (grains.empty() || workers.empty() || engines.empty())
        throw std::invalid_argument("sweep: grains, workers and engines must be non-empty");

    std::vector<SpeedupRecord> records;
    records.reserve(grains.size() * workers.size() * engines.size());
    for (Engine e : engines) {
        for (double g : grains) {
            for (std::size_t w : workers) {
                BenchConfig cfg = base;
                cfg.engine = e;
                cfg.tc_micros = g;
                cfg.n_workers = w;
                records.push_back(run_bench(cfg));
                if (on_record) on_record(records.back());
            }
        }
    }
    return records;
}

void write_csv_header(std::ostream& out) {
    out << "engine,tc_micros,n_workers,n_tasks,median_seconds,speedup,tasks_per_second\n";
}

void write_csv_row(std::ostream& out, const SpeedupRecord& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%g,%zu,%zu,%.6f,%.4f,%.1f\n", r.engine.c_str(),
                  r.tc_micros, r.n_workers, r.n_tasks, r.median_seconds, r.speedup,
                  r.tasks_per_second);
    out << buf;
}

void write_csv(std::ostream& out, const std::vector<SpeedupRecord>& records) {
    write_csv_header(out);
    for (const auto& r : records) write_csv_row(out, r);
}

}  // namespace streamfarm::bench
