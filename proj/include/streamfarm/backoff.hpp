// Spin-then-yield backoff used whenever a channel reports Empty/Full.
// The ring itself never blocks; waiting is layered here.

#pragma once

#include <cstdint>
#include <thread>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace streamfarm {

inline void cpu_relax() {
#if defined(__x86_64__) || defined(__i386__)
    _mm_pause();
#else
    std::this_thread::yield();
#endif
}

// Bounded spin (default 1024 iterations), then yield to the scheduler,
// repeating until reset. On a single-CPU host spinning can never help --
// the peer thread cannot run concurrently -- so the spin phase is skipped.
class Backoff {
public:
    explicit Backoff(uint32_t spin_budget = 1024)
        : budget_(single_cpu() ? 0 : spin_budget), spins_(0) {}

    void pause() {
        if (spins_ < budget_) {
            ++spins_;
            cpu_relax();
        } else {
            std::this_thread::yield();
        }
    }

    void reset() { spins_ = 0; }

    static bool single_cpu() {
        static const bool one = std::thread::hardware_concurrency() <= 1;
        return one;
    }

private:
    uint32_t budget_;
    uint32_t spins_;
};

}  // namespace streamfarm
