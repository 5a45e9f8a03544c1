#include "p4te/rate_control.hpp"

#include <algorithm>
#include <cassert>

namespace p4te {

RateDecision rate_control_decide(const Packet& pkt, Color egress_color,
                                 const LeafRateRecords* leaf_records) {
    if (pkt.has(flag::RATE_CTRL_APPLIED) || pkt.has(flag::RATE_CTRL_EXEMPT)) {
        return RateDecision::NONE;
    }
    if (leaf_records != nullptr) {
        // The packet whose admission advanced the record is the one packet
        // still eligible inside its own window.
        int64_t rec = leaf_records->record(pkt.flow_key());
        if (pkt.seq != rec && pkt.seq < rec + leaf_records->window_bytes()) {
            return RateDecision::NONE;
        }
    }
    if (pkt.metadata.incoming_packet_color != Color::YELLOW) return RateDecision::NONE;
    if (egress_color == Color::RED) return RateDecision::DECREASE;
    if (egress_color == Color::GREEN) return RateDecision::INCREASE;
    return RateDecision::NONE;
}

int64_t resize_window(int64_t w, RateDecision d, int64_t mss) {
    assert(d != RateDecision::NONE);
    int64_t out = d == RateDecision::DECREASE ? (w >> 1) : w + (w >> 2);
    return std::max(out, mss);
}

Packet generate_fack(const Packet& data_pkt, RateDecision d, int64_t mss) {
    Packet fack = data_pkt;
    std::swap(fack.src_addr, fack.dst_addr);
    std::swap(fack.src_port, fack.dst_port);
    fack.flags = flag::FACK | flag::ACK;
    fack.ack = data_pkt.echo;
    fack.window = resize_window(data_pkt.window, d, mss);
    fack.size_bytes = 64;
    fack.metadata.reset();
    fack.stamp = FlowletStamp{};
    return fack;
}

}  // namespace p4te
