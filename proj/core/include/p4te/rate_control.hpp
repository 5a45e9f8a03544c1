#pragma once

#include <cstdint>
#include <unordered_map>

#include "p4te/hash.hpp"
#include "p4te/packet.hpp"

namespace p4te {

enum class RateDecision : uint8_t { NONE, DECREASE, INCREASE };

// Per-flow rate-control sequence tracking at leaf switches. The record is
// the highest sequence number at which rate control was (or could have
// been) applied; packets within the next B bytes are exempt everywhere.
//
// The record advances on the data path: when the source-side leaf forwards
// a non-exempt data packet it bumps the record to that packet's sequence,
// so eligible packets are at least B bytes apart and a flow can collect at
// most ceil(size/B) FACKs no matter how events interleave.
class LeafRateRecords {
  public:
    explicit LeafRateRecords(int64_t window_bytes) : window_(window_bytes) {}

    // Data packet entering from a directly-attached host. Returns true if
    // the packet is exempt (caller sets RATE_CTRL_EXEMPT); otherwise the
    // record advances and the packet stays eligible.
    bool admit_data(const FiveTuple& flow, int64_t seq) {
        int64_t& rec = records_[flow];
        if (seq < rec + window_) return true;
        rec = seq;
        return false;
    }

    // ACK or FACK forwarded toward a directly-attached host. FACKs are
    // clones of the data packet they answered, so their seq field tells
    // the leaf where rate control was applied.
    void observe_ack(const FiveTuple& data_flow, const Packet& ack_pkt) {
        int64_t& rec = records_[data_flow];
        if (ack_pkt.ack > rec) rec = ack_pkt.ack;
        if (ack_pkt.has(flag::FACK) && ack_pkt.seq > rec) rec = ack_pkt.seq;
    }

    int64_t record(const FiveTuple& flow) const {
        auto it = records_.find(flow);
        return it == records_.end() ? 0 : it->second;
    }
    int64_t window_bytes() const { return window_; }

  private:
    int64_t window_;
    std::unordered_map<FiveTuple, int64_t, FiveTupleKeyHash> records_;
};

// DECREASE on (incoming YELLOW, egress RED), INCREASE on (YELLOW, GREEN),
// NONE otherwise; flagged packets and leaf-window-covered packets are
// skipped. `leaf_records` is null at non-leaf switches.
RateDecision rate_control_decide(const Packet& pkt, Color egress_color,
                                 const LeafRateRecords* leaf_records);

// DECREASE halves, INCREASE adds a quarter (shift arithmetic), floored at
// one MSS.
int64_t resize_window(int64_t w, RateDecision d, int64_t mss);

// Clone of the data packet headed back to the flow source: addresses and
// ports swapped, FACK+ACK set, ack from the transport echo, window resized.
Packet generate_fack(const Packet& data_pkt, RateDecision d, int64_t mss);

}  // namespace p4te
