// Task-farm skeleton: emitter -> N replicated workers -> optional
// collector, wired with SPSC rings. The ordered variant tags every task at
// emission and restores tag order in front of the collector with a reorder
// buffer, so downstream sees results in emission order no matter how
// workers finish.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "streamfarm/arbiter.hpp"
#include "streamfarm/node.hpp"
#include "streamfarm/slab_pool.hpp"

namespace streamfarm {

struct FarmConfig {
    std::size_t n_workers = 1;
    std::size_t channel_capacity = 512;
    SchedulingPolicy policy = SchedulingPolicy::round_robin();
    bool ordered = false;
    bool collector_present = true;
    // How the collector merges worker outputs. FirstAvailable avoids
    // head-of-line blocking; RoundRobinStrict mirrors the emitter's
    // round-robin so a deterministic schedule preserves order on its own.
    GatherPolicy gather = GatherPolicy::FirstAvailable;
    // Pending-item count above which the reorder buffer warns (a stuck
    // worker shows up as unbounded growth). 0 picks the default
    // 4 * n_workers * channel_capacity.
    std::size_t reorder_watermark = 0;
};

struct FarmStats {
    NetworkStats network;
    uint64_t emitted = 0;    // items the emitter service produced
    uint64_t collected = 0;  // items delivered to the collector service
    uint64_t reorder_max_held = 0;
    double wall_seconds = 0.0;
};

class Farm {
public:
    // Worker services run concurrently on every worker thread and must not
    // share mutable state (stateless farm contract). The collector service
    // may be null only when cfg.collector_present is false.
    Farm(Service emitter, Service worker, Service collector, FarmConfig cfg,
         RuntimeConfig runtime = RuntimeConfig::from_env());
    ~Farm();

    void run();
    // Throws IntegrityError on a lost task (tag gap) in ordered mode.
    FarmStats wait();
    std::optional<FarmStats> wait_for(double seconds);

    Network& network() { return *net_; }
    const FarmConfig& config() const { return cfg_; }

private:
    struct Shared;  // counters and reorder state shared with node services

    FarmStats make_stats(NetworkStats net_stats) const;

    FarmConfig cfg_;
    std::unique_ptr<Shared> shared_;
    std::unique_ptr<Network> net_;
};

Farm build_farm(Service emitter, Service worker, Service collector, FarmConfig cfg,
                RuntimeConfig runtime = RuntimeConfig::from_env());

}  // namespace streamfarm
