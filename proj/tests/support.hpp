// Shared helpers for the test binaries.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <thread>
#include <utility>

namespace testsupport {

// Integer payloads travel through the queues as fake pointers. The +1
// keeps value 0 distinct from nullptr (the empty-slot marker); the low
// address range can never collide with a real heap or static address
// (such as the end-of-stream sentinel).
inline void* box(std::uint64_t v) {
    return reinterpret_cast<void*>(static_cast<std::uintptr_t>(v + 1));
}

inline std::uint64_t unbox(void* p) {
    return static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(p)) - 1;
}

// Physical core count from the cpu topology, falling back to the logical
// count when /sys is unavailable.
inline unsigned physical_cores() {
    namespace fs = std::filesystem;
    std::set<std::pair<int, int>> cores;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator("/sys/devices/system/cpu", ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("cpu", 0) != 0 || name.size() < 4 || !isdigit(name[3]))
            continue;
        std::ifstream core_f(entry.path() / "topology/core_id");
        std::ifstream pkg_f(entry.path() / "topology/physical_package_id");
        int core = -1, pkg = -1;
        if (core_f >> core && pkg_f >> pkg)
            cores.emplace(pkg, core);
    }
    if (!cores.empty())
        return static_cast<unsigned>(cores.size());
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

}  // namespace testsupport
