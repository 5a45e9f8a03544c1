#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "p4te/event_queue.hpp"
#include "p4te/hash.hpp"
#include "p4te/packet.hpp"

namespace p4te {

struct TransportConfig {
    int64_t mss_bytes = 1460;
    int64_t init_cwnd_bytes = 2 * 1460;
    int64_t max_cwnd_bytes = 8 * 1460;
    SimTime rto = from_ms(200);
    SimTime rto_max = from_ms(2000);
};

struct FlowCompletionRecord {
    uint64_t flow_id = 0;
    TrafficClass cls = TrafficClass::SHORT;
    int64_t size_bytes = 0;
    SimTime start = 0;
    SimTime end = 0;
    uint64_t retransmissions = 0;
    uint64_t facks_received = 0;
};

// Minimal window-based reliable sender: additive increase / multiplicative
// decrease with ECN echo response, duplicate-ack fast retransmit, RTO with
// exponential backoff, and the FACK window clamp. Stands in for the
// end-host stack; every scheme runs the same transport.
class FlowSender {
  public:
    using InjectFn = std::function<void(Packet&&)>;
    using DoneFn = std::function<void(const FlowCompletionRecord&)>;

    FlowSender(const TransportConfig& cfg, EventQueue& eq, uint64_t flow_id, FiveTuple tuple,
               TrafficClass cls, int64_t size_bytes, InjectFn inject, DoneFn on_done);

    void begin();  // call at the flow's start time
    void on_ack(const Packet& pkt);

    bool done() const { return done_; }
    int64_t cwnd() const { return cwnd_; }
    int64_t highest_acked() const { return highest_acked_; }
    uint64_t retransmissions() const { return retrans_; }
    uint64_t facks_received() const { return facks_; }
    const FiveTuple& tuple() const { return tuple_; }

  private:
    void tick();
    void inject_data(int64_t seq);
    void fast_retransmit();
    void arm_rto();
    void handle_timeout(uint64_t gen);
    void complete();

    const TransportConfig& cfg_;
    EventQueue& eq_;
    uint64_t flow_id_;
    FiveTuple tuple_;
    TrafficClass cls_;
    int64_t size_;
    SimTime start_time_ = 0;

    int64_t next_seq_ = 0;
    int64_t highest_acked_ = 0;
    int64_t max_sent_ = 0;
    int64_t cwnd_;
    int64_t ssthresh_;
    int64_t last_cut_end_ = 0;
    int dup_acks_ = 0;
    SimTime rto_cur_;
    uint64_t timer_gen_ = 0;
    bool timer_armed_ = false;
    bool done_ = false;

    uint64_t retrans_ = 0;
    uint64_t facks_ = 0;

    InjectFn inject_;
    DoneFn on_done_;
};

// Cumulative-ack receiver; out-of-order data is buffered and produces
// duplicate acks, CE marks echo on the next ack.
class FlowReceiver {
  public:
    using InjectFn = FlowSender::InjectFn;

    FlowReceiver(FiveTuple data_tuple, TrafficClass cls, InjectFn inject)
        : tuple_(data_tuple), cls_(cls), inject_(std::move(inject)) {}

    void on_data(const Packet& pkt);

    int64_t rcv_next() const { return rcv_next_; }
    uint64_t wire_duplicates() const { return wire_dups_; }
    // Reliability invariant: the reassembled stream covers [0, size)
    // exactly once.
    bool coverage_exact(int64_t size_bytes) const {
        return rcv_next_ == size_bytes && pending_.empty();
    }

  private:
    FiveTuple tuple_;
    TrafficClass cls_;
    int64_t rcv_next_ = 0;
    std::map<int64_t, int64_t> pending_;  // start -> end, disjoint, beyond rcv_next
    bool ce_seen_ = false;
    uint64_t wire_dups_ = 0;
    InjectFn inject_;
};

}  // namespace p4te
