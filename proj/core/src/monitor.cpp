#include "p4te/monitor.hpp"

namespace p4te {

EgressMonitorResult egress_stage_monitor(EgressMonitorState& state, int egress_port,
                                         int64_t queue_depth_seen, int64_t cost_units,
                                         SimTime now) {
    EgressMonitorResult r;
    auto& ps = state.ports[egress_port];

    if (queue_depth_seen >= ps.old_queue_depth + state.delta) {
        r.depth_event = TrafficEvent{egress_port, EventKind::QUEUE_DEPTH_INCREASE,
                                     queue_depth_seen, Color::GREEN, now};
        ps.old_queue_depth = queue_depth_seen;
    } else if (queue_depth_seen <= ps.old_queue_depth - state.delta) {
        r.depth_event = TrafficEvent{egress_port, EventKind::QUEUE_DEPTH_DECREASE,
                                     queue_depth_seen, Color::GREEN, now};
        ps.old_queue_depth = queue_depth_seen;
    }

    Color last = ps.old_packet_color;
    Color next = ps.meter.mark(now, cost_units);
    ps.old_packet_color = next;
    r.packet_color = next;
    if (next > last) {
        r.util_event =
            TrafficEvent{egress_port, EventKind::UTILIZATION_RATE_INCREASE, 0, next, now};
    } else if (next < last) {
        r.util_event =
            TrafficEvent{egress_port, EventKind::UTILIZATION_RATE_DECREASE, 0, next, now};
    }

    r.feedback_to_cp = r.depth_event.has_value() || r.util_event.has_value();
    r.recirculate = r.util_event.has_value();
    return r;
}

Color ingress_class_monitor(IngressMonitorState& state, int port, TrafficClass cls,
                            int64_t cost_units, SimTime now) {
    return state.meter(port, cls).mark(now, cost_units);
}

}  // namespace p4te
