// Grain-sweep micro-benchmark: a farm pushes a stream of small tasks
// through worker threads that busy-spin a calibrated per-task compute time
// Tc, and the harness reports speedup against a single-threaded reference
// of the same work. Two interchangeable engines run the identical workload:
// the lockfree engine uses the SPSC-composed farm, the mutex baseline uses
// one bounded mutex+condition-variable queue on each side of the workers.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace streamfarm::bench {

enum class Engine { Lockfree, MutexBaseline };
enum class Alloc { Pool, System };

const char* engine_name(Engine e);

struct SyntheticTask {
    std::uint64_t seq;       // emission index
    std::uint64_t words[10]; // each word read and incremented once per pass
};

struct BenchConfig {
    double tc_micros = 5.0;
    std::size_t n_workers = 4;  // 0 runs the single-threaded reference only
    std::size_t n_tasks = 100000;
    std::size_t channel_capacity = 512;
    Alloc alloc = Alloc::Pool;
    Engine engine = Engine::Lockfree;
    int repetitions = 5;
    bool verify = true;  // collector checks every word and the seq checksum
};

struct SpeedupRecord {
    std::string engine;
    double tc_micros = 0.0;
    std::size_t n_workers = 0;
    std::size_t n_tasks = 0;
    double median_seconds = 0.0;
    double speedup = 0.0;  // T_seq / T_par, 1.0 for the reference run
    double tasks_per_second = 0.0;
};

// Busy-loop iteration count whose measured duration is within tolerance of
// the target: +-5%, relaxed to +-20% below 2 us where timer resolution
// dominates (median of >= 20 trials). Throws CalibrationError with the
// best count found if the bounded search cannot converge.
std::uint64_t calibrate_spin(double target_micros);

// The calibrated busy loop itself; a dependency chain the optimizer cannot
// collapse. Never sleeps: sleeping would free the core and inflate
// apparent speedup.
void spin_for(std::uint64_t iterations);

// One benchmark cell. Runs the sequential reference (memoized per
// tc/n_tasks/alloc) plus `repetitions` timed runs of the configured
// engine; the first repetition is discarded as warm-up when more than one
// was requested, and the median of the rest is reported. Throws
// IntegrityError if any task is lost or arrives with unexpected contents.
SpeedupRecord run_bench(const BenchConfig& cfg);

// Cartesian product engines x grains x workers, in that nesting order.
// `on_record` (optional) fires after each cell so callers can stream
// partial results before a later cell aborts the sweep.
std::vector<SpeedupRecord> sweep(const std::vector<double>& grains,
                                 const std::vector<std::size_t>& workers,
                                 const std::vector<Engine>& engines,
                                 BenchConfig base,
                                 const std::function<void(const SpeedupRecord&)>& on_record = {});

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SpeedupRecord& r);
void write_csv(std::ostream& out, const std::vector<SpeedupRecord>& records);

}  // namespace streamfarm::bench
