#include "streamfarm/arbiter.hpp"

namespace streamfarm {

OutputSelector SchedulingPolicy::make_selector() const {
    switch (kind) {
        case Kind::RoundRobin:
            return selectors::round_robin();
        case Kind::OnDemand:
            return selectors::on_demand();
        case Kind::UserDefined:
            if (!custom)
                throw std::invalid_argument("UserDefined policy without a selector");
            return custom;
    }
    throw std::invalid_argument("unknown scheduling policy");
}

namespace {
Verdict relay_service(void* item) {
    return Verdict::emit(item);
}
}  // namespace

SpmcQueue::SpmcQueue(std::size_t n_consumers, std::size_t capacity, SchedulingPolicy policy,
                     RuntimeConfig cfg)
    : net_(std::move(cfg)) {
    if (n_consumers == 0)
        throw std::invalid_argument("SpmcQueue: n_consumers must be >= 1");
    NodeId emitter = net_.add_node("emitter", relay_service);
    net_.set_output_selector(emitter, policy.make_selector());
    in_ = &net_.add_input_port(emitter, capacity);
    outs_.reserve(n_consumers);
    for (std::size_t i = 0; i < n_consumers; ++i)
        outs_.push_back(&net_.add_output_port(emitter, capacity));
    net_.run();
}

MpscQueue::MpscQueue(std::size_t n_producers, std::size_t capacity, GatherPolicy policy,
                     RuntimeConfig cfg)
    : net_(std::move(cfg)) {
    if (n_producers == 0)
        throw std::invalid_argument("MpscQueue: n_producers must be >= 1");
    NodeId collector = net_.add_node("collector", relay_service);
    net_.set_gather_policy(collector, policy);
    ins_.reserve(n_producers);
    for (std::size_t i = 0; i < n_producers; ++i)
        ins_.push_back(&net_.add_input_port(collector, capacity));
    out_ = &net_.add_output_port(collector, capacity);
    net_.run();
}

MpmcQueue::MpmcQueue(std::size_t n_producers, std::size_t n_consumers, std::size_t capacity,
                     SchedulingPolicy policy, GatherPolicy gather, RuntimeConfig cfg)
    : net_(std::move(cfg)) {
    if (n_producers == 0 || n_consumers == 0)
        throw std::invalid_argument("MpmcQueue: producer and consumer counts must be >= 1");
    NodeId collector = net_.add_node("collector", relay_service);
    NodeId emitter = net_.add_node("emitter", relay_service);
    net_.set_gather_policy(collector, gather);
    net_.set_output_selector(emitter, policy.make_selector());
    net_.connect(collector, emitter, capacity);
    ins_.reserve(n_producers);
    for (std::size_t i = 0; i < n_producers; ++i)
        ins_.push_back(&net_.add_input_port(collector, capacity));
    outs_.reserve(n_consumers);
    for (std::size_t i = 0; i < n_consumers; ++i)
        outs_.push_back(&net_.add_output_port(emitter, capacity));
    net_.run();
}

}  // namespace streamfarm
