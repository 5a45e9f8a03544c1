#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "p4te/packet.hpp"
#include "p4te/time.hpp"

namespace p4te {

enum class MetricKind : uint8_t { QUEUE_DEPTH, LINK_UTIL };

enum class EventKind : uint8_t {
    QUEUE_DEPTH_INCREASE,
    QUEUE_DEPTH_DECREASE,
    UTILIZATION_RATE_INCREASE,
    UTILIZATION_RATE_DECREASE,
};

// Feedback from the data plane to the switch-local control plane. Depth
// events carry the observed queue depth; utilization events carry the new
// color.
struct TrafficEvent {
    int port = -1;
    EventKind kind{};
    int64_t depth = 0;
    Color color = Color::GREEN;
    SimTime at = 0;
};

struct RoutingGroup {
    int id = 0;                // == priority rank; 0 is the highest priority
    std::vector<int> members;  // sorted port ids, hash-uniform selection
};

// One priority-ordered table per monitored metric. Group 0 maps to the best
// metric sub-range; each live upward port sits in exactly one group.
class UpwardTable {
  public:
    static UpwardTable for_queue_depth(const std::vector<int>& upward_ports, int delta,
                                       int group_count);
    static UpwardTable for_link_util(const std::vector<int>& upward_ports);

    MetricKind metric() const { return metric_; }
    const std::vector<RoutingGroup>& groups() const { return groups_; }
    int group_of(int port) const;

    // Ordered sub-range lookup (binary search over the boundary list).
    int group_for_depth(int64_t depth) const;
    int group_for_color(Color c) const { return static_cast<int>(c); }
    int group_for_event(const TrafficEvent& e) const;

    // Hash-uniform choice within the highest-priority non-empty group.
    // An entirely empty table is an initialization-order bug.
    int select(uint64_t hash) const;

    // Moves the port to the group matching the event; returns false for a
    // port not present (stale feedback, dropped by the caller).
    bool reconfigure(const TrafficEvent& e);

    void remove_port(int port);
    // Recovered ports carry no traffic history and enter the top group.
    void add_port(int port);

    bool partition_ok(const std::vector<int>& live_ports) const;

  private:
    MetricKind metric_{};
    std::vector<RoutingGroup> groups_;
    std::vector<int64_t> depth_bounds_;  // ascending upper bounds, finite groups only
    std::map<int, int> port_to_group_;
    void insert_sorted(int group, int port);
};

std::pair<UpwardTable, UpwardTable> init_tables(const std::vector<int>& upward_ports, int delta,
                                                int depth_group_count);

}  // namespace p4te
