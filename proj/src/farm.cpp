#include "streamfarm/farm.hpp"

#include <cstdio>
#include <unordered_map>

namespace streamfarm {

namespace {

// Runtime-internal wrapper carrying the emission tag; user services only
// ever see the payload inside.
struct Envelope {
    uint64_t tag;
    void* payload;
};

class ReorderBuffer {
public:
    explicit ReorderBuffer(std::size_t watermark) : watermark_(watermark) {}

    void insert(Envelope* e) { held_.emplace(e->tag, e); }

    // Called once the in-order run has been flushed: what is still held is
    // genuinely pending on a missing tag.
    void record_pending() {
        if (held_.size() > max_held_)
            max_held_ = held_.size();
        if (held_.size() > watermark_ && !warned_) {
            warned_ = true;
            std::fprintf(stderr,
                         "streamfarm: reorder buffer holds %zu pending results "
                         "(watermark %zu); a worker may be stuck\n",
                         held_.size(), watermark_);
        }
    }

    // Next envelope in tag order, or nullptr if it has not arrived yet.
    Envelope* take_next() {
        auto it = held_.find(next_expected_);
        if (it == held_.end())
            return nullptr;
        Envelope* e = it->second;
        held_.erase(it);
        ++next_expected_;
        return e;
    }

    std::size_t pending() const { return held_.size(); }
    uint64_t next_expected() const { return next_expected_; }
    uint64_t max_held() const { return max_held_; }

private:
    std::size_t watermark_;
    uint64_t next_expected_ = 0;
    std::unordered_map<uint64_t, Envelope*> held_;
    uint64_t max_held_ = 0;
    bool warned_ = false;
};

}  // namespace

struct Farm::Shared {
    // Written by the emitter thread / collector thread respectively; read
    // only after the network has terminated.
    uint64_t emitted = 0;
    uint64_t collected = 0;
    std::unique_ptr<SlabPool> envelopes;  // ordered mode only
    std::unique_ptr<ReorderBuffer> reorder;
};

Farm::Farm(Service emitter, Service worker, Service collector, FarmConfig cfg,
           RuntimeConfig runtime)
    : cfg_(cfg), shared_(std::make_unique<Shared>()) {
    if (cfg.n_workers == 0)
        throw std::invalid_argument("Farm: n_workers must be >= 1");
    if (cfg.ordered && !cfg.collector_present)
        throw std::invalid_argument("Farm: ordered mode requires a collector");
    if (cfg.collector_present && !collector)
        throw std::invalid_argument("Farm: collector service missing");
    if (!emitter || !worker)
        throw std::invalid_argument("Farm: emitter and worker services are required");

    net_ = std::make_unique<Network>(std::move(runtime));
    Shared* sh = shared_.get();

    Service emitter_svc;
    Service worker_svc;
    Service collector_svc;

    if (cfg.ordered) {
        std::size_t watermark = cfg.reorder_watermark
                                    ? cfg.reorder_watermark
                                    : 4 * cfg.n_workers * cfg.channel_capacity;
        // Envelopes are recycled through the pool: the emitter thread
        // acquires, workers (on absorb) and the collector release.
        sh->envelopes = std::make_unique<SlabPool>(sizeof(Envelope), watermark + 2 * cfg.n_workers,
                                                   cfg.n_workers + 1);
        sh->reorder = std::make_unique<ReorderBuffer>(watermark);

        emitter_svc = [sh, user = std::move(emitter)](void*) {
            Verdict v = user(nullptr);
            if (v.kind != Verdict::Kind::Emit)
                return v;
            void* buf = sh->envelopes->acquire();
            Backoff backoff;
            while (buf == nullptr) {  // all envelopes in flight: wait for returns
                backoff.pause();
                buf = sh->envelopes->acquire();
            }
            auto* e = new (buf) Envelope{sh->emitted++, v.payload};
            return Verdict::emit(e);
        };
    } else {
        emitter_svc = [sh, user = std::move(emitter)](void*) {
            Verdict v = user(nullptr);
            if (v.kind == Verdict::Kind::Emit)
                ++sh->emitted;
            return v;
        };
    }

    for (std::size_t w = 0; w < cfg.n_workers; ++w) {
        // One wrapper per worker node; in ordered mode each owns its pool
        // releaser handle for tasks it absorbs.
        if (cfg.ordered) {
            worker_svc = [sh, handle = sh->envelopes->releaser(w), user = worker](void* raw) {
                auto* e = static_cast<Envelope*>(raw);
                Verdict v = user(e->payload);
                if (v.kind == Verdict::Kind::Emit) {
                    e->payload = v.payload;
                    return Verdict::emit(e);
                }
                sh->envelopes->release(handle, e);
                return v;
            };
        } else {
            worker_svc = worker;
        }
        net_->add_node("worker-" + std::to_string(w), std::move(worker_svc));
    }

    if (cfg.collector_present) {
        if (cfg.ordered) {
            collector_svc = [sh, handle = sh->envelopes->releaser(cfg.n_workers),
                             user = std::move(collector)](void* raw) {
                sh->reorder->insert(static_cast<Envelope*>(raw));
                while (Envelope* e = sh->reorder->take_next()) {
                    user(e->payload);
                    ++sh->collected;
                    sh->envelopes->release(handle, e);
                }
                sh->reorder->record_pending();
                return Verdict::absorb();
            };
        } else {
            collector_svc = [sh, user = std::move(collector)](void* item) {
                ++sh->collected;
                return user(item);
            };
        }
    }

    // Node ids: workers were added first (0..n-1); emitter and collector
    // come after so worker wrappers could capture their releaser handles.
    NodeId emitter_id = net_->add_node("emitter", std::move(emitter_svc));
    net_->set_output_selector(emitter_id, cfg.policy.make_selector());
    NodeId collector_id = 0;
    if (cfg.collector_present) {
        collector_id = net_->add_node("collector", std::move(collector_svc));
        net_->set_gather_policy(collector_id, cfg.gather);
    }
    for (std::size_t w = 0; w < cfg.n_workers; ++w) {
        net_->connect(emitter_id, w, cfg.channel_capacity);
        if (cfg.collector_present)
            net_->connect(w, collector_id, cfg.channel_capacity);
    }
}

Farm::~Farm() = default;

void Farm::run() {
    net_->run();
}

FarmStats Farm::wait() {
    return make_stats(net_->wait());
}

std::optional<FarmStats> Farm::wait_for(double seconds) {
    auto net_stats = net_->wait_for(seconds);
    if (!net_stats)
        return std::nullopt;
    return make_stats(std::move(*net_stats));
}

FarmStats Farm::make_stats(NetworkStats net_stats) const {
    FarmStats stats;
    stats.wall_seconds = net_stats.wall_seconds;
    stats.emitted = shared_->emitted;
    stats.collected = cfg_.collector_present ? shared_->collected : 0;
    if (shared_->reorder) {
        stats.reorder_max_held = shared_->reorder->max_held();
        if (shared_->reorder->pending() != 0 || shared_->collected != shared_->emitted)
            throw IntegrityError(
                "ordered farm: tag gap at end-of-stream (emitted " +
                std::to_string(shared_->emitted) + ", delivered " +
                std::to_string(shared_->collected) + ", pending " +
                std::to_string(shared_->reorder->pending()) + ")");
    }
    stats.network = std::move(net_stats);
    return stats;
}

Farm build_farm(Service emitter, Service worker, Service collector, FarmConfig cfg,
                RuntimeConfig runtime) {
    return Farm(std::move(emitter), std::move(worker), std::move(collector), std::move(cfg),
                std::move(runtime));
}

}  // namespace streamfarm
