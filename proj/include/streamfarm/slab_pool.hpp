// Fixed-size buffer recycler for streaming hot paths. One thread acquires;
// releasing threads hand buffers back over dedicated SPSC return channels,
// so recycling never takes a lock and never contends. Not a general
// allocator: one buffer size per pool, fixed population.

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "streamfarm/backoff.hpp"
#include "streamfarm/spsc_ring.hpp"

namespace streamfarm {

// Misuse checking (double release, foreign buffer) costs one atomic
// exchange per acquire/release, so debug builds enable it and release
// builds trust the usage contract. The member layout is identical either
// way; only this default flips with the build mode.
#ifdef NDEBUG
#define STREAMFARM_POOL_CHECKS_DEFAULT false
#else
#define STREAMFARM_POOL_CHECKS_DEFAULT true
#endif

class SlabPool {
public:
    // Lazy: return channels are drained by acquire() when the free list
    // runs dry. Background: a dedicated thread drains them continuously.
    enum class DrainMode { Lazy, Background };

    class ReleaserHandle {
    public:
        std::size_t id() const { return id_; }

    private:
        friend class SlabPool;
        explicit ReleaserHandle(std::size_t id) : id_(id) {}
        std::size_t id_;
    };

    SlabPool(std::size_t buffer_size, std::size_t total_buffers, std::size_t n_releasers,
             DrainMode mode = DrainMode::Lazy,
             bool misuse_checks = STREAMFARM_POOL_CHECKS_DEFAULT)
        : stride_((buffer_size + 15) / 16 * 16),
          buffer_size_(buffer_size),
          total_(total_buffers),
          mode_(mode),
          checks_(misuse_checks) {
        if (buffer_size == 0 || total_buffers == 0 || n_releasers == 0)
            throw std::invalid_argument("SlabPool: all parameters must be >= 1");
        arena_ = std::make_unique<std::byte[]>(stride_ * total_);
        free_list_.reserve(total_);
        for (std::size_t i = 0; i < total_; ++i)
            free_list_.push_back(arena_.get() + i * stride_);
        return_channels_.reserve(n_releasers);
        for (std::size_t i = 0; i < n_releasers; ++i)
            return_channels_.push_back(std::make_unique<SpscRing>(total_));
        if (checks_) {
            in_flight_flags_ = std::make_unique<std::atomic<uint8_t>[]>(total_);
            for (std::size_t i = 0; i < total_; ++i)
                in_flight_flags_[i].store(0, std::memory_order_relaxed);
        }
        if (mode_ == DrainMode::Background) {
            free_ring_ = std::make_unique<SpscRing>(total_);
            drainer_ = std::thread([this] { drain_loop(); });
        }
    }

    ~SlabPool() {
        if (drainer_.joinable()) {
            stop_.store(true, std::memory_order_release);
            drainer_.join();
        }
    }

    SlabPool(const SlabPool&) = delete;
    SlabPool& operator=(const SlabPool&) = delete;

    // Unique acquirer thread only. nullptr means Exhausted. In Lazy mode
    // that is definitive: the return channels were drained first, so every
    // buffer really is in flight. In Background mode returns travel
    // through the drainer thread, so exhaustion can be transient while
    // released buffers are still in transit; callers retry.
    void* acquire() {
        void* buf = nullptr;
        if (mode_ == DrainMode::Background) {
            if (!free_list_.empty()) {
                buf = free_list_.back();
                free_list_.pop_back();
            } else {
                buf = free_ring_->pop();
            }
        } else {
            if (free_list_.empty())
                drain_into_free_list();
            if (!free_list_.empty()) {
                buf = free_list_.back();
                free_list_.pop_back();
            }
        }
        if (buf != nullptr) {
            ++acquires_;
            debug_mark_acquired(buf);
        }
        return buf;
    }

    ReleaserHandle releaser(std::size_t idx) const {
        if (idx >= return_channels_.size())
            throw std::out_of_range("SlabPool: no such releaser");
        return ReleaserHandle(idx);
    }

    std::size_t releaser_count() const { return return_channels_.size(); }

    // Callable only from the thread owning `h`. Never drops the buffer: a
    // full return channel is waited out with spin-then-yield (cannot happen
    // when the usage contract holds, since channels fit every buffer).
    void release(const ReleaserHandle& h, void* buf) {
        debug_check_release(buf);
        SpscRing& ch = *return_channels_[h.id()];
        Backoff backoff;
        while (ch.push(buf) != PushResult::Ok)
            backoff.pause();
    }

    std::size_t buffer_size() const { return buffer_size_; }
    std::size_t total_buffers() const { return total_; }
    uint64_t acquire_count() const { return acquires_; }

    // Quiescent use only (no concurrent acquire/release): total number of
    // buffers currently free, wherever they sit.
    std::size_t quiescent_free_count() const {
        std::size_t n = free_list_.size();
        if (free_ring_)
            n += free_ring_->approx_len();
        for (const auto& ch : return_channels_)
            n += ch->approx_len();
        return n;
    }

private:
    void drain_into_free_list() {
        for (const auto& ch : return_channels_)
            while (void* buf = ch->pop())
                free_list_.push_back(buf);
    }

    void drain_loop() {
        Backoff backoff;
        while (!stop_.load(std::memory_order_acquire)) {
            bool moved = false;
            for (const auto& ch : return_channels_) {
                while (void* buf = ch->pop()) {
                    while (free_ring_->push(buf) != PushResult::Ok)
                        backoff.pause();
                    moved = true;
                }
            }
            if (moved)
                backoff.reset();
            else
                backoff.pause();
        }
    }

    std::size_t slab_index(void* buf) const {
        auto* p = static_cast<std::byte*>(buf);
        if (p < arena_.get() || p >= arena_.get() + stride_ * total_ ||
            (p - arena_.get()) % static_cast<std::ptrdiff_t>(stride_) != 0)
            throw std::logic_error("SlabPool: buffer does not belong to this pool");
        return static_cast<std::size_t>(p - arena_.get()) / stride_;
    }
    void debug_mark_acquired(void* buf) {
        if (!checks_) return;
        if (in_flight_flags_[slab_index(buf)].exchange(1, std::memory_order_acq_rel) != 0)
            throw std::logic_error("SlabPool: acquired a buffer already in flight");
    }
    void debug_check_release(void* buf) {
        if (!checks_) return;
        if (in_flight_flags_[slab_index(buf)].exchange(0, std::memory_order_acq_rel) != 1)
            throw std::logic_error("SlabPool: double release");
    }

    const std::size_t stride_;
    const std::size_t buffer_size_;
    const std::size_t total_;
    const DrainMode mode_;
    std::unique_ptr<std::byte[]> arena_;
    std::vector<void*> free_list_;  // acquirer-side stock
    std::vector<std::unique_ptr<SpscRing>> return_channels_;
    std::unique_ptr<SpscRing> free_ring_;  // Background mode: drainer -> acquirer
    std::thread drainer_;
    std::atomic<bool> stop_{false};
    uint64_t acquires_ = 0;
    const bool checks_;
    std::unique_ptr<std::atomic<uint8_t>[]> in_flight_flags_;
};

}  // namespace streamfarm
