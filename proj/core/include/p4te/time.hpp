#pragma once

#include <cstdint>

namespace p4te {

// Simulation time in integer nanoseconds. All rates are converted to
// per-nanosecond rationals once at config load so event ordering never
// depends on floating point.
using SimTime = int64_t;

constexpr SimTime kNsPerUs = 1000;
constexpr SimTime kNsPerMs = 1000 * 1000;
constexpr SimTime kNsPerSec = 1000 * 1000 * 1000;

constexpr SimTime from_us(int64_t us) { return us * kNsPerUs; }
constexpr SimTime from_ms(int64_t ms) { return ms * kNsPerMs; }
constexpr SimTime from_sec(int64_t s) { return s * kNsPerSec; }

constexpr double to_sec(SimTime t) { return static_cast<double>(t) / 1e9; }

}  // namespace p4te
