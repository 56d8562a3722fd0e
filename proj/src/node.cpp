#include "streamfarm/node.hpp"

#include <algorithm>
#include <sstream>

#ifdef __linux__
#include <pthread.h>
#include <sched.h>
#endif

namespace streamfarm {

namespace selectors {

OutputSelector round_robin() {
    return [next = std::size_t{0}](void*, std::span<SpscRing* const> outs) mutable {
        const std::size_t idx = next;
        next = (next + 1) % outs.size();
        return idx;
    };
}

OutputSelector on_demand() {
    return [](void*, std::span<SpscRing* const> outs) {
        std::size_t best = 0;
        std::size_t best_len = outs[0]->approx_len();
        for (std::size_t i = 1; i < outs.size(); ++i) {
            const std::size_t len = outs[i]->approx_len();
            if (len < best_len) {
                best = i;
                best_len = len;
            }
        }
        return best;
    };
}

}  // namespace selectors

const NodeStats& NetworkStats::by_name(const std::string& name) const {
    for (const auto& n : nodes)
        if (n.name == name)
            return n;
    throw std::out_of_range("NetworkStats: no node named " + name);
}

Network::Network(RuntimeConfig cfg) : cfg_(std::move(cfg)) {}

Network::~Network() {
    if (state_ == State::Running) {
        std::unique_lock<std::mutex> lock(done_mutex_);
        done_cv_.wait(lock, [&] { return done_count_ == nodes_.size(); });
    }
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
}

NodeId Network::add_node(std::string name, Service service) {
    check_built("add_node");
    if (!service)
        throw std::invalid_argument("add_node: service must be callable");
    auto node = std::make_unique<Node>();
    node->name = std::move(name);
    node->service = std::move(service);
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
}

std::size_t Network::connect(NodeId producer, NodeId consumer, std::size_t capacity,
                             bool allow_cycle) {
    check_built("connect");
    if (producer >= nodes_.size() || consumer >= nodes_.size())
        throw std::invalid_argument("connect: unknown node id");
    if (!allow_cycle && (producer == consumer || reaches(consumer, producer)))
        throw std::invalid_argument("connect: edge closes a cycle (pass allow_cycle)");
    rings_.push_back(std::make_unique<SpscRing>(capacity));
    SpscRing* ring = rings_.back().get();
    nodes_[producer]->outputs.push_back(ring);
    nodes_[consumer]->inputs.push_back(ring);
    edges_.emplace_back(producer, consumer);
    return edges_.size() - 1;
}

ProducerPort& Network::add_input_port(NodeId consumer, std::size_t capacity) {
    check_built("add_input_port");
    if (consumer >= nodes_.size())
        throw std::invalid_argument("add_input_port: unknown node id");
    rings_.push_back(std::make_unique<SpscRing>(capacity));
    SpscRing* ring = rings_.back().get();
    nodes_[consumer]->inputs.push_back(ring);
    input_ports_.push_back(std::make_unique<ProducerPort>(ring, cfg_.spin_budget));
    return *input_ports_.back();
}

ConsumerPort& Network::add_output_port(NodeId producer, std::size_t capacity) {
    check_built("add_output_port");
    if (producer >= nodes_.size())
        throw std::invalid_argument("add_output_port: unknown node id");
    rings_.push_back(std::make_unique<SpscRing>(capacity));
    SpscRing* ring = rings_.back().get();
    nodes_[producer]->outputs.push_back(ring);
    output_ports_.push_back(std::make_unique<ConsumerPort>(ring, cfg_.spin_budget));
    return *output_ports_.back();
}

void Network::set_output_selector(NodeId node, OutputSelector selector) {
    check_built("set_output_selector");
    nodes_.at(node)->selector = std::move(selector);
}

void Network::set_gather_policy(NodeId node, GatherPolicy policy) {
    check_built("set_gather_policy");
    nodes_.at(node)->gather = policy;
}

void Network::run() {
    check_built("run");
    if (nodes_.empty())
        throw std::invalid_argument("run: network has no nodes");
    if (!audit_single_role_wiring())
        throw std::logic_error("run: wiring audit failed");
    state_ = State::Running;
    start_time_ = std::chrono::steady_clock::now();
    threads_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        threads_.emplace_back([this, i] { node_loop(*nodes_[i], i); });
#ifdef __linux__
        if (!cfg_.pin_map.empty()) {
            cpu_set_t set;
            CPU_ZERO(&set);
            CPU_SET(cfg_.pin_map[i % cfg_.pin_map.size()], &set);
            pthread_setaffinity_np(threads_.back().native_handle(), sizeof(set), &set);
        }
#endif
    }
}

NetworkStats Network::wait() {
    if (cfg_.watchdog_seconds > 0.0) {
        auto stats = wait_for(cfg_.watchdog_seconds);
        if (!stats) {
            std::ostringstream msg;
            msg << "watchdog expired after " << cfg_.watchdog_seconds << "s; still running:";
            for (const auto& n : nodes_)
                if (!n->done.load(std::memory_order_acquire))
                    msg << ' ' << n->name;
            throw WatchdogTimeout(msg.str());
        }
        return *stats;
    }
    auto stats = wait_for(-1.0);
    return *stats;
}

std::optional<NetworkStats> Network::wait_for(double seconds) {
    if (state_ == State::Terminated)
        return collect_stats();
    if (state_ != State::Running)
        throw std::logic_error("wait: network is not running");
    {
        std::unique_lock<std::mutex> lock(done_mutex_);
        auto all_done = [&] { return done_count_ == nodes_.size(); };
        if (seconds < 0.0)
            done_cv_.wait(lock, all_done);
        else if (!done_cv_.wait_for(lock, std::chrono::duration<double>(seconds), all_done))
            return std::nullopt;
    }
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
    wall_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time_)
                        .count();
    state_ = State::Terminated;
    return collect_stats();
}

bool Network::audit_single_role_wiring() const {
    // Count producer and consumer endpoint registrations per ring.
    std::vector<int> produced(rings_.size(), 0), consumed(rings_.size(), 0);
    auto index_of = [&](const SpscRing* r) {
        for (std::size_t i = 0; i < rings_.size(); ++i)
            if (rings_[i].get() == r)
                return i;
        return rings_.size();
    };
    for (const auto& n : nodes_) {
        for (const auto* r : n->outputs)
            ++produced[index_of(r)];
        for (const auto* r : n->inputs)
            ++consumed[index_of(r)];
    }
    for (const auto& p : input_ports_)
        ++produced[index_of(&p->ring())];
    for (const auto& c : output_ports_)
        ++consumed[index_of(&c->ring())];
    return std::all_of(produced.begin(), produced.end(), [](int c) { return c == 1; }) &&
           std::all_of(consumed.begin(), consumed.end(), [](int c) { return c == 1; });
}

void Network::node_loop(Node& node, std::size_t) {
    Backoff backoff(cfg_.spin_budget);
    std::vector<bool> exhausted(node.inputs.size(), false);
    std::size_t live = node.inputs.size();
    std::size_t cursor = 0;
    bool ended_early = false;

    if (node.inputs.empty()) {
        // Source: invoked with no input until it returns End.
        for (;;) {
            Verdict v = node.service(nullptr);
            ++node.svc_calls;
            if (v.kind == Verdict::Kind::Emit) {
                route(node, v.payload, backoff);
                ++node.items_out;
            } else if (v.kind == Verdict::Kind::End) {
                break;
            }
        }
    } else {
        while (live > 0) {
            void* item = gather_one(node, exhausted, live, cursor, backoff);
            if (item == nullptr)
                break;  // all inputs exhausted
            ++node.items_in;
            Verdict v = node.service(item);
            ++node.svc_calls;
            if (v.kind == Verdict::Kind::Emit) {
                route(node, v.payload, backoff);
                ++node.items_out;
            } else if (v.kind == Verdict::Kind::End) {
                ended_early = true;
                break;
            }
        }
        // A node that ended before its inputs did keeps draining so that
        // upstream producers are never wedged against a full ring.
        if (ended_early) {
            while (live > 0)
                if (gather_one(node, exhausted, live, cursor, backoff) == nullptr)
                    break;
        }
    }

    for (SpscRing* out : node.outputs) {
        backoff.reset();
        while (out->push(eos()) != PushResult::Ok)
            backoff.pause();
    }

    node.done.store(true, std::memory_order_release);
    {
        std::lock_guard<std::mutex> lock(done_mutex_);
        ++done_count_;
    }
    done_cv_.notify_all();
}

// Pops the next data item per the gather policy, retiring inputs as their
// EOS arrives. Returns nullptr once every input is exhausted.
void* Network::gather_one(Node& node, std::vector<bool>& exhausted, std::size_t& live,
                          std::size_t& cursor, Backoff& backoff) {
    const std::size_t n = node.inputs.size();
    backoff.reset();
    while (live > 0) {
        if (node.gather == GatherPolicy::RoundRobinStrict) {
            while (exhausted[cursor])
                cursor = (cursor + 1) % n;
            void* v = node.inputs[cursor]->pop();
            if (v == nullptr) {
                backoff.pause();
                continue;
            }
            if (is_eos(v)) {
                exhausted[cursor] = true;
                --live;
                cursor = (cursor + 1) % n;
                continue;
            }
            cursor = (cursor + 1) % n;
            return v;
        }
        // FirstAvailable: one full scan from the rotating start.
        bool got_any = false;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = (cursor + k) % n;
            if (exhausted[i])
                continue;
            void* v = node.inputs[i]->pop();
            if (v == nullptr)
                continue;
            got_any = true;
            if (is_eos(v)) {
                exhausted[i] = true;
                --live;
                continue;
            }
            cursor = (i + 1) % n;
            return v;
        }
        if (!got_any)
            backoff.pause();
    }
    return nullptr;
}

void Network::route(Node& node, void* item, Backoff& backoff) {
    if (node.outputs.empty())
        return;  // terminal node: emitted items are dropped, counted by caller
    std::size_t idx = 0;
    if (node.outputs.size() > 1) {
        if (!node.selector)
            node.selector = selectors::round_robin();
        idx = node.selector(item, std::span<SpscRing* const>(node.outputs));
        if (idx >= node.outputs.size())
            throw std::logic_error("output selector returned an invalid index");
    }
    SpscRing* out = node.outputs[idx];
    backoff.reset();
    while (out->push(item) != PushResult::Ok)
        backoff.pause();
}

bool Network::reaches(NodeId from, NodeId to) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeId> stack{from};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        if (cur == to)
            return true;
        if (seen[cur])
            continue;
        seen[cur] = true;
        for (const auto& [p, c] : edges_)
            if (p == cur)
                stack.push_back(c);
    }
    return false;
}

void Network::check_built(const char* op) const {
    if (state_ != State::Built)
        throw std::logic_error(std::string(op) + ": network is no longer in Built state");
}

NetworkStats Network::collect_stats() const {
    NetworkStats stats;
    stats.wall_seconds = wall_seconds_;
    stats.nodes.reserve(nodes_.size());
    for (const auto& n : nodes_)
        stats.nodes.push_back({n->name, n->items_in, n->items_out, n->svc_calls});
    return stats;
}

}  // namespace streamfarm
