// Streaming network runtime: each node is a thread running a
// read-service-write loop over SPSC endpoints. End-of-stream propagates
// through the topology and terminates every node once sources finish.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "streamfarm/backoff.hpp"
#include "streamfarm/config.hpp"
#include "streamfarm/errors.hpp"
#include "streamfarm/spsc_ring.hpp"
#include "streamfarm/stream_item.hpp"

namespace streamfarm {

using NodeId = std::size_t;

// StreamItem -> {Emit, Absorb, End}. Sources are invoked with nullptr.
using Service = std::function<Verdict(void*)>;

// Chooses the destination ring for an emitted item on a fan-out node.
using OutputSelector = std::function<std::size_t(void*, std::span<SpscRing* const>)>;

// How a multi-input node picks its next item.
enum class GatherPolicy {
    FirstAvailable,   // scan from a rotating start, take the first non-empty input
    RoundRobinStrict  // take inputs strictly in cyclic order, waiting on each
};

namespace selectors {
OutputSelector round_robin();
// Prefers the output with the smallest approximate occupancy, ties to the
// lowest index.
OutputSelector on_demand();
}  // namespace selectors

struct NodeStats {
    std::string name;
    uint64_t items_in = 0;
    uint64_t items_out = 0;
    uint64_t svc_calls = 0;
};

struct NetworkStats {
    std::vector<NodeStats> nodes;
    double wall_seconds = 0.0;

    const NodeStats& by_name(const std::string& name) const;
};

// External endpoint feeding a node from a non-network thread. Owned by the
// Network; one user thread per port.
class ProducerPort {
public:
    ProducerPort(SpscRing* ring, uint32_t spin_budget) : ring_(ring), backoff_(spin_budget) {}

    void push(void* item) { push_raw(item); }
    bool try_push(void* item) { return ring_->push(item) == PushResult::Ok; }
    // Marks end-of-stream; no pushes may follow.
    void close() { push_raw(eos()); }
    SpscRing& ring() { return *ring_; }
    const SpscRing& ring() const { return *ring_; }

private:
    void push_raw(void* item) {
        backoff_.reset();
        while (ring_->push(item) != PushResult::Ok)
            backoff_.pause();
    }

    SpscRing* ring_;
    Backoff backoff_;
};

// External endpoint draining a node's output from a non-network thread.
class ConsumerPort {
public:
    enum class State { Item, Empty, Closed };
    struct TryPop {
        State state;
        void* item;
    };

    ConsumerPort(SpscRing* ring, uint32_t spin_budget) : ring_(ring), backoff_(spin_budget) {}

    // Blocks until an item arrives; nullptr once the stream closed.
    void* pop() {
        if (closed_)
            return nullptr;
        backoff_.reset();
        for (;;) {
            void* v = ring_->pop();
            if (v == nullptr) {
                backoff_.pause();
                continue;
            }
            if (is_eos(v)) {
                closed_ = true;
                return nullptr;
            }
            return v;
        }
    }

    TryPop try_pop() {
        if (closed_)
            return {State::Closed, nullptr};
        void* v = ring_->pop();
        if (v == nullptr)
            return {State::Empty, nullptr};
        if (is_eos(v)) {
            closed_ = true;
            return {State::Closed, nullptr};
        }
        return {State::Item, v};
    }

    std::size_t approx_len() const { return ring_->approx_len(); }
    SpscRing& ring() { return *ring_; }
    const SpscRing& ring() const { return *ring_; }

private:
    SpscRing* ring_;
    Backoff backoff_;
    bool closed_ = false;
};

class Network {
public:
    enum class State { Built, Running, Terminated };

    explicit Network(RuntimeConfig cfg = RuntimeConfig::from_env());
    ~Network();

    Network(const Network&) = delete;
    Network& operator=(const Network&) = delete;

    NodeId add_node(std::string name, Service service);

    // Links producer -> consumer with a fresh ring of the given capacity.
    // Edges that would close a cycle are rejected unless allow_cycle is set;
    // no termination guarantee is made for cyclic topologies.
    std::size_t connect(NodeId producer, NodeId consumer, std::size_t capacity,
                        bool allow_cycle = false);

    // External endpoints for feeding/draining the network from user threads.
    ProducerPort& add_input_port(NodeId consumer, std::size_t capacity);
    ConsumerPort& add_output_port(NodeId producer, std::size_t capacity);

    void set_output_selector(NodeId node, OutputSelector selector);
    void set_gather_policy(NodeId node, GatherPolicy policy);

    // Starts one thread per node. Validates the topology first.
    void run();

    // Blocks until every node terminated. Honors cfg.watchdog_seconds when
    // nonzero by throwing WatchdogTimeout.
    NetworkStats wait();
    // Like wait() with an explicit deadline; nullopt on timeout (the network
    // keeps running and may be waited on again).
    std::optional<NetworkStats> wait_for(double seconds);

    State state() const { return state_; }
    std::size_t node_count() const { return nodes_.size(); }

    // True when every ring in the network has exactly one producer and one
    // consumer role bound by the wiring. Composition keeps this by
    // construction; exposed so tests can audit it.
    bool audit_single_role_wiring() const;

    const RuntimeConfig& config() const { return cfg_; }

private:
    struct Node {
        std::string name;
        Service service;
        std::vector<SpscRing*> inputs;
        std::vector<SpscRing*> outputs;
        OutputSelector selector;  // null => round-robin
        GatherPolicy gather = GatherPolicy::FirstAvailable;
        uint64_t items_in = 0;
        uint64_t items_out = 0;
        uint64_t svc_calls = 0;
        std::atomic<bool> done{false};
    };

    void node_loop(Node& node, std::size_t index);
    void* gather_one(Node& node, std::vector<bool>& exhausted, std::size_t& live,
                     std::size_t& cursor, Backoff& backoff);
    void route(Node& node, void* item, Backoff& backoff);
    bool reaches(NodeId from, NodeId to) const;
    void check_built(const char* op) const;
    NetworkStats collect_stats() const;

    RuntimeConfig cfg_;
    State state_ = State::Built;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<std::unique_ptr<SpscRing>> rings_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::unique_ptr<ProducerPort>> input_ports_;
    std::vector<std::unique_ptr<ConsumerPort>> output_ports_;
    std::vector<std::thread> threads_;

    std::mutex done_mutex_;
    std::condition_variable done_cv_;
    std::size_t done_count_ = 0;
    std::chrono::steady_clock::time_point start_time_;
    double wall_seconds_ = 0.0;
    bool joined_ = false;
};

}  // namespace streamfarm
