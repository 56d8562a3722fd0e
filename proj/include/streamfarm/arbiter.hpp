// Multi-party queues composed from SPSC rings plus an active mediator
// thread. The mediator is the only thread touching the internal rings on
// its side, so producers and consumers never contend and the data path
// needs no atomic read-modify-write: items move by memory copy through a
// relay. MPMC is a fan-in stage feeding a fan-out stage over one SPSC
// link, which also rules out ABA by construction.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "streamfarm/node.hpp"

namespace streamfarm {

// Fan-out scheduling for the mediator of an SPMC queue (and the farm
// emitter). UserDefined carries a stateful selector: item x occupancies ->
// output index.
struct SchedulingPolicy {
    enum class Kind { RoundRobin, OnDemand, UserDefined };

    Kind kind = Kind::RoundRobin;
    OutputSelector custom;  // only for UserDefined

    static SchedulingPolicy round_robin() { return {Kind::RoundRobin, nullptr}; }
    static SchedulingPolicy on_demand() { return {Kind::OnDemand, nullptr}; }
    static SchedulingPolicy user_defined(OutputSelector sel) {
        return {Kind::UserDefined, std::move(sel)};
    }

    OutputSelector make_selector() const;
};

// Single producer, N consumers. The producer thread calls push/close; each
// consumer thread owns one index and calls pop(i) until it returns nullptr.
class SpmcQueue {
public:
    SpmcQueue(std::size_t n_consumers, std::size_t capacity, SchedulingPolicy policy,
              RuntimeConfig cfg = RuntimeConfig::from_env());

    void push(void* item) { in_->push(item); }
    void close() { in_->close(); }

    // Blocking; nullptr once the stream is closed and drained.
    void* pop(std::size_t consumer) { return outs_[consumer]->pop(); }
    ConsumerPort::TryPop try_pop(std::size_t consumer) { return outs_[consumer]->try_pop(); }

    std::size_t consumer_count() const { return outs_.size(); }
    NetworkStats wait() { return net_.wait(); }
    Network& network() { return net_; }

private:
    Network net_;
    ProducerPort* in_;
    std::vector<ConsumerPort*> outs_;
};

// N producers, single consumer. Each producer thread owns one index and
// calls push(i)/close(i); EOS is forwarded downstream only after every
// producer has closed.
class MpscQueue {
public:
    MpscQueue(std::size_t n_producers, std::size_t capacity, GatherPolicy policy,
              RuntimeConfig cfg = RuntimeConfig::from_env());

    void push(std::size_t producer, void* item) { ins_[producer]->push(item); }
    void close(std::size_t producer) { ins_[producer]->close(); }

    void* pop() { return out_->pop(); }
    ConsumerPort::TryPop try_pop() { return out_->try_pop(); }

    std::size_t producer_count() const { return ins_.size(); }
    NetworkStats wait() { return net_.wait(); }
    Network& network() { return net_; }

private:
    Network net_;
    std::vector<ProducerPort*> ins_;
    ConsumerPort* out_;
};

// N producers, M consumers: fan-in feeding fan-out through one SPSC link.
class MpmcQueue {
public:
    MpmcQueue(std::size_t n_producers, std::size_t n_consumers, std::size_t capacity,
              SchedulingPolicy policy, GatherPolicy gather = GatherPolicy::FirstAvailable,
              RuntimeConfig cfg = RuntimeConfig::from_env());

    void push(std::size_t producer, void* item) { ins_[producer]->push(item); }
    void close(std::size_t producer) { ins_[producer]->close(); }

    void* pop(std::size_t consumer) { return outs_[consumer]->pop(); }
    ConsumerPort::TryPop try_pop(std::size_t consumer) { return outs_[consumer]->try_pop(); }

    std::size_t producer_count() const { return ins_.size(); }
    std::size_t consumer_count() const { return outs_.size(); }
    NetworkStats wait() { return net_.wait(); }
    Network& network() { return net_; }

private:
    Network net_;
    std::vector<ProducerPort*> ins_;
    std::vector<ConsumerPort*> outs_;
};

}  // namespace streamfarm
