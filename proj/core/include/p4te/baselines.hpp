#pragma once

#include <cstdint>
#include <vector>

#include "p4te/hash.hpp"
#include "p4te/packet.hpp"
#include "p4te/time.hpp"

namespace p4te {

struct EcnConfig {
    int threshold_pkts = 6;
};

inline void ecn_mark(Packet& pkt, int queue_depth, const EcnConfig& cfg) {
    if (queue_depth >= cfg.threshold_pkts) pkt.set(flag::ECN_CE);
}

// Stateless hash pick over the upward port set; the flowlet gap logic in
// front of it is shared with the other schemes.
inline int ecmp_pick(const FiveTuple& t, const std::vector<int>& upward_ports, uint64_t salt) {
    return upward_ports[five_tuple_hash(t, salt) % upward_ports.size()];
}

// Per-channel transmit-rate estimator sampled on a fixed period; the decay
// constant equals the sampling period.
struct UtilEstimator {
    double ewma = 0.0;
    uint64_t window_units = 0;

    void on_tx(int64_t cost_units) { window_units += static_cast<uint64_t>(cost_units); }
    void sample(double interval_s, int64_t capacity_units_per_s) {
        double inst = static_cast<double>(window_units) /
                      (static_cast<double>(capacity_units_per_s) * interval_s);
        ewma = 0.5 * ewma + 0.5 * inst;
        window_units = 0;
    }
};

// One best next hop per destination leaf, refreshed by probes. A probe
// wins if the current entry aged out, if it reports lower utilization, or
// on exact ties by lower port id; same-port probes always refresh.
class HulaLeafState {
  public:
    struct BestHop {
        int port = -1;
        double util = 0.0;
        SimTime at = INT64_MIN / 4;
    };

    HulaLeafState(int n_leaf, SimTime aging) : best_(n_leaf), aging_(aging) {}

    void update(int origin_leaf, int port, double util, SimTime now);
    const BestHop& best(int leaf) const { return best_[leaf]; }

  private:
    std::vector<BestHop> best_;
    SimTime aging_;
};

}  // namespace p4te
