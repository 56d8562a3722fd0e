// Bounded wait-free single-producer/single-consumer ring buffer.
//
// This is the only primitive channel in the runtime: every multi-party
// queue is composed out of these plus a mediator thread (see arbiter.hpp).
// The design is the slot-marker variant of Lamport's ring: a nullptr slot
// means empty, so the hot paths never read the other role's index and the
// producer/consumer cache lines never ping-pong. No locks, no atomic
// read-modify-write instructions anywhere.

#pragma once

#include <atomic>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <stdexcept>
#include <thread>

namespace streamfarm {

inline constexpr std::size_t kCacheLineSize = 64;

enum class PushResult { Ok, Full };

// Item handles are machine-word references to caller-owned payloads.
// nullptr is reserved as the empty-slot marker and is never a valid item.
class SpscRing {
public:
    explicit SpscRing(std::size_t capacity)
        : capacity_(capacity),
          mask_(std::bit_ceil(capacity == 0 ? 1 : capacity) - 1),
          slots_(new std::atomic<void*>[mask_ + 1]) {
        if (capacity == 0)
            throw std::invalid_argument("SpscRing: capacity must be >= 1");
        for (std::size_t i = 0; i <= mask_; ++i)
            slots_[i].store(nullptr, std::memory_order_relaxed);
    }

    SpscRing(const SpscRing&) = delete;
    SpscRing& operator=(const SpscRing&) = delete;

    // Producer role only. Returns Full once `capacity()` items are
    // enqueued and un-popped; the requested capacity is honored even
    // though the slot array is rounded up to a power of two.
    PushResult push(void* item) {
        assert(item != nullptr && "nullptr is the empty-slot marker");
        assert(bind_role(producer_id_) && "SpscRing: second producer thread");
        const uint64_t t = tail_.load(std::memory_order_relaxed);
        if (t >= capacity_ &&
            slots_[(t - capacity_) & mask_].load(std::memory_order_acquire) != nullptr)
            return PushResult::Full;
        // The full check above also guarantees slots_[t & mask_] has been
        // consumed and nulled (it was written capacity-or-more pops ago).
        slots_[t & mask_].store(item, std::memory_order_release);
        tail_.store(t + 1, std::memory_order_release);
        return PushResult::Ok;
    }

    // Consumer role only. Returns nullptr when empty, else the oldest item.
    void* pop() {
        assert(bind_role(consumer_id_) && "SpscRing: second consumer thread");
        const uint64_t h = head_.load(std::memory_order_relaxed);
        void* v = slots_[h & mask_].load(std::memory_order_acquire);
        if (v == nullptr)
            return nullptr;
        slots_[h & mask_].store(nullptr, std::memory_order_release);
        head_.store(h + 1, std::memory_order_release);
        return v;
    }

    // Front item without consuming it. Consumer role only.
    void* peek() const {
        const uint64_t h = head_.load(std::memory_order_relaxed);
        return slots_[h & mask_].load(std::memory_order_acquire);
    }

    // Safe from either role: exact when quiescent, otherwise a value
    // bracketed by the true occupancy over the call window.
    std::size_t approx_len() const {
        const uint64_t h = head_.load(std::memory_order_acquire);
        const uint64_t t = tail_.load(std::memory_order_acquire);
        return t >= h ? static_cast<std::size_t>(t - h) : 0;
    }

    bool empty() const { return approx_len() == 0; }
    std::size_t capacity() const { return capacity_; }

private:
#ifndef NDEBUG
    static bool bind(std::atomic<std::size_t>& owner) {
        const std::size_t self = std::hash<std::thread::id>{}(std::this_thread::get_id());
        std::size_t cur = owner.load(std::memory_order_relaxed);
        if (cur == 0) {
            owner.store(self, std::memory_order_relaxed);
            return true;
        }
        return cur == self;
    }
    bool bind_role(std::atomic<std::size_t>& owner) { return bind(owner); }
#else
    bool bind_role(std::atomic<std::size_t>&) { return true; }
#endif

    const std::size_t capacity_;
    const std::size_t mask_;
    std::unique_ptr<std::atomic<void*>[]> slots_;

    alignas(kCacheLineSize) std::atomic<uint64_t> head_{0};
    alignas(kCacheLineSize) std::atomic<uint64_t> tail_{0};
    alignas(kCacheLineSize) mutable std::atomic<std::size_t> producer_id_{0};
    std::atomic<std::size_t> consumer_id_{0};
};

}  // namespace streamfarm
