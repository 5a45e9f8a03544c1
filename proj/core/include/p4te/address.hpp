#pragma once

#include <cstdint>

namespace p4te {

// Addresses are opaque 32-bit integers with prefix semantics; the prefix
// matching logic is what matters, not the width.
struct Prefix {
    uint32_t addr = 0;
    int len = 0;  // number of leading significant bits, 0..32

    bool matches(uint32_t a) const {
        if (len == 0) return true;
        uint32_t mask = len >= 32 ? 0xffffffffu : ~((1u << (32 - len)) - 1u);
        return (a & mask) == (addr & mask);
    }
    bool contains(const Prefix& other) const { return other.len >= len && matches(other.addr); }
};

// Hierarchical layout: dcn prefix / leaf subnet / host.
constexpr uint32_t kDcnBase = 10u << 24;

inline uint32_t host_address(int leaf, int host_idx) {
    return kDcnBase | (static_cast<uint32_t>(leaf) << 16) | (static_cast<uint32_t>(host_idx) << 8) | 1u;
}
inline Prefix host_prefix(int leaf, int host_idx) { return {host_address(leaf, host_idx), 32}; }
inline Prefix leaf_subnet(int leaf) { return {kDcnBase | (static_cast<uint32_t>(leaf) << 16), 16}; }
inline Prefix dcn_prefix() { return {kDcnBase, 8}; }

}  // namespace p4te
