#pragma once

#include <cstdint>
#include <deque>
#include <functional>

#include "p4te/event_queue.hpp"
#include "p4te/packet.hpp"

namespace p4te {

// Serialization cost unit: 1/1000 of one packet slot. A full-size data
// packet costs 1000 regardless of byte size (links are configured in
// packets per second); small control packets (ACK/FACK/probe) cost a
// configured fraction, and byte mode scales cost by payload size.
constexpr int kFullPacketCost = 1000;

struct LinkCounters {
    uint64_t enq = 0;
    uint64_t deq = 0;
    uint64_t drop = 0;
    uint64_t bytes = 0;     // bytes transmitted
    uint64_t data_enq = 0;  // data packets offered (excludes control traffic)

    bool conserved(size_t queue_len) const { return enq == deq + drop + queue_len; }
};

// Unidirectional channel: FIFO tail-drop queue feeding a fixed-rate server,
// then a propagation delay.
class Link {
  public:
    struct Config {
        int64_t bandwidth_pps = 1;
        SimTime prop_delay = 0;
        int queue_capacity_pkts = 1;
    };
    // Called at the instant the packet arrives at the far end.
    using Deliver = std::function<void(Packet&&)>;

    Link(EventQueue& eq, Config cfg, Deliver deliver)
        : eq_(&eq), cfg_(cfg), deliver_(std::move(deliver)) {}

    enum class Enq { Enqueued, Dropped };
    struct EnqueueResult {
        Enq status;
        int queue_depth;  // occupancy before insertion (valid when enqueued)
    };

    EnqueueResult enqueue(Packet pkt, int cost_millislots);

    bool full() const { return static_cast<int>(q_.size()) >= cfg_.queue_capacity_pkts; }
    int depth() const { return static_cast<int>(q_.size()); }
    SimTime tx_busy_until() const { return busy_until_; }
    const LinkCounters& counters() const { return counters_; }
    const Config& config() const { return cfg_; }

    void count_drop(const Packet& pkt) {
        ++counters_.enq;
        ++counters_.drop;
        if (pkt.is_data()) ++counters_.data_enq;
    }

    SimTime service_ns(int cost_millislots) const {
        return (static_cast<int64_t>(cost_millislots) * 1000000 + cfg_.bandwidth_pps - 1) /
               cfg_.bandwidth_pps;
    }

  private:
    void serve_next(SimTime t);

    EventQueue* eq_;
    Config cfg_;
    Deliver deliver_;
    std::deque<std::pair<Packet, int>> q_;
    bool busy_ = false;
    SimTime busy_until_ = 0;
    LinkCounters counters_;
};

}  // namespace p4te
