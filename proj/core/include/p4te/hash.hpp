#pragma once

#include <cstdint>

#include "p4te/rng.hpp"

namespace p4te {

struct FiveTuple {
    uint32_t src_addr = 0;
    uint32_t dst_addr = 0;
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    uint32_t flow_label = 0;

    bool operator==(const FiveTuple&) const = default;
    FiveTuple reversed() const { return {dst_addr, src_addr, dst_port, src_port, flow_label}; }
};

// 64-bit mixing hash over the forwarding 5-tuple. The same hash drives
// flowlet slot indexing, in-group member choice and the ECMP baseline so
// the degenerate single-group case matches ECMP exactly.
inline uint64_t five_tuple_hash(const FiveTuple& t, uint64_t salt) {
    uint64_t h = salt;
    h = splitmix64(h ^ ((uint64_t(t.src_addr) << 32) | t.dst_addr));
    h = splitmix64(h ^ ((uint64_t(t.src_port) << 48) | (uint64_t(t.dst_port) << 32) | t.flow_label));
    return h;
}

struct FiveTupleKeyHash {
    size_t operator()(const FiveTuple& t) const { return five_tuple_hash(t, 0x5eedu); }
};

}  // namespace p4te
