#pragma once

#include <stdexcept>

namespace streamfarm {

// An invariant the runtime promised was violated at run time (lost task,
// tag gap at end-of-stream, failed conservation check).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WatchdogTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Spin calibration could not reach the requested tolerance; carries the
// best iteration count found and its measured duration.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& msg, uint64_t best_iterations, double best_micros)
        : std::runtime_error(msg),
          best_iterations(best_iterations),
          best_micros(best_micros) {}

    uint64_t best_iterations;
    double best_micros;
};

}  // namespace streamfarm
