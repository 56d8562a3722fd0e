// Runtime tunables, overridable through the environment:
//   STREAMFARM_SPIN      spin iterations before yielding (default 1024)
//   STREAMFARM_WATCHDOG  default watchdog for Network::wait, seconds (0 = off)
//   STREAMFARM_PIN       comma-separated core list; node i pins to list[i % n]

#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace streamfarm {

struct RuntimeConfig {
    uint32_t spin_budget = 1024;
    double watchdog_seconds = 0.0;  // 0 disables the watchdog
    std::vector<int> pin_map;       // empty disables pinning

    static RuntimeConfig from_env() {
        RuntimeConfig cfg;
        if (const char* s = std::getenv("STREAMFARM_SPIN"))
            cfg.spin_budget = static_cast<uint32_t>(std::strtoul(s, nullptr, 10));
        if (const char* s = std::getenv("STREAMFARM_WATCHDOG"))
            cfg.watchdog_seconds = std::strtod(s, nullptr);
        if (const char* s = std::getenv("STREAMFARM_PIN")) {
            std::string spec(s);
            std::size_t pos = 0;
            while (pos < spec.size()) {
                std::size_t comma = spec.find(',', pos);
                if (comma == std::string::npos) comma = spec.size();
                if (comma > pos)
                    cfg.pin_map.push_back(std::atoi(spec.substr(pos, comma - pos).c_str()));
                pos = comma + 1;
            }
        }
        return cfg;
    }
};

}  // namespace streamfarm
