#pragma once

#include <cstdint>

#include "p4te/hash.hpp"
#include "p4te/time.hpp"

namespace p4te {

enum class TrafficClass : uint8_t { SHORT = 0, LARGE = 1 };

// Meter colors, ranked GREEN < YELLOW < RED for utilization event
// classification.
enum class Color : uint8_t { GREEN = 0, YELLOW = 1, RED = 2 };

namespace flag {
constexpr uint16_t ACK = 1u << 0;
constexpr uint16_t FACK = 1u << 1;
constexpr uint16_t ECN_CE = 1u << 2;
constexpr uint16_t ECN_ECHO = 1u << 3;
constexpr uint16_t RATE_CTRL_APPLIED = 1u << 4;
constexpr uint16_t RATE_CTRL_EXEMPT = 1u << 5;
constexpr uint16_t PROBE = 1u << 6;
constexpr uint16_t FEEDBACK = 1u << 7;
}  // namespace flag

// Switch-local scratch carried by a packet while it is inside one switch.
// Reset at every hop.
struct PacketMeta {
    SimTime ingress_timestamp = 0;
    int egress_port = -1;
    int queue_depth_seen = 0;
    Color incoming_packet_color = Color::GREEN;

    void reset() { *this = PacketMeta{}; }
};

// Stamp applied at the path-diversity point (source leaf upward selection),
// used by the delivery-order checker. Rides the packet end to end.
struct FlowletStamp {
    uint32_t slot = 0;
    uint32_t generation = 0;
    uint32_t index = 0;
    uint16_t origin_switch = 0;
    bool set = false;
};

struct Packet {
    uint32_t src_addr = 0;
    uint32_t dst_addr = 0;
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    uint32_t flow_label = 0;
    TrafficClass traffic_class = TrafficClass::SHORT;
    int32_t size_bytes = 0;

    int64_t seq = 0;
    int64_t ack = 0;
    int64_t window = 0;
    // Highest ack the sender has received, echoed into data packets so a
    // non-leaf switch has an ack number when it fabricates a FACK.
    int64_t echo = 0;

    uint16_t flags = 0;

    // HULA probe payload (wire fields, survive hops)
    int16_t probe_origin = -1;
    double probe_util = 0.0;

    PacketMeta metadata;
    FlowletStamp stamp;

    bool has(uint16_t f) const { return (flags & f) != 0; }
    void set(uint16_t f) { flags |= f; }
    void clear(uint16_t f) { flags &= static_cast<uint16_t>(~f); }

    bool is_data() const { return !has(flag::ACK | flag::FACK | flag::PROBE | flag::FEEDBACK); }

    FiveTuple five_tuple() const { return {src_addr, dst_addr, src_port, dst_port, flow_label}; }
    // Flow identity as seen by switches: the data-direction tuple.
    FiveTuple flow_key() const {
        return has(flag::ACK) ? five_tuple().reversed() : five_tuple();
    }
};

}  // namespace p4te
