#pragma once

#include <optional>
#include <vector>

#include "p4te/meters.hpp"
#include "p4te/routing_groups.hpp"

namespace p4te {

// Egress-stage state: per port, the queue depth last reported to the
// control plane (init 0), the last meter color (init GREEN), and the
// link-utilization meter.
struct EgressMonitorState {
    struct PortState {
        int64_t old_queue_depth = 0;
        Color old_packet_color = Color::GREEN;
        TrTcmMeter meter;
    };
    int delta = 1;
    std::vector<PortState> ports;
};

struct EgressMonitorResult {
    std::optional<TrafficEvent> depth_event;
    std::optional<TrafficEvent> util_event;
    // One feedback copy goes to the control plane if anything fired; a
    // second copy is recirculated to ingress only for utilization events.
    bool feedback_to_cp = false;
    bool recirculate = false;
    Color packet_color = Color::GREEN;
};

// Queue-depth event iff the observed depth moved >= delta away from the
// stored value (which then tracks the observation); utilization event iff
// the meter color changed rank.
EgressMonitorResult egress_stage_monitor(EgressMonitorState& state, int egress_port,
                                         int64_t queue_depth_seen, int64_t cost_units,
                                         SimTime now);

// Ingress-stage state: one meter per (port, traffic class) at the class
// safe-rate, plus the utilization colors fed back from egress by
// recirculation.
struct IngressMonitorState {
    std::vector<SrTcmMeter> class_meters;  // [port * 2 + class]
    std::vector<Color> port_utilizations;  // updated after the recirculation delay

    SrTcmMeter& meter(int port, TrafficClass cls) {
        return class_meters[static_cast<size_t>(port) * 2 + static_cast<size_t>(cls)];
    }
};

// GREEN = within the class safe-rate ("safe"), YELLOW = over it.
Color ingress_class_monitor(IngressMonitorState& state, int port, TrafficClass cls,
                            int64_t cost_units, SimTime now);

}  // namespace p4te
