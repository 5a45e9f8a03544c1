#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "p4te/baselines.hpp"
#include "p4te/event_queue.hpp"
#include "p4te/link.hpp"
#include "p4te/monitor.hpp"
#include "p4te/rate_control.hpp"
#include "p4te/report.hpp"
#include "p4te/switch_pipeline.hpp"
#include "p4te/topology.hpp"
#include "p4te/transport.hpp"
#include "p4te/workload.hpp"

namespace p4te {

// Everything one run needs, fully resolved to integers/rationals.
struct SimParams {
    Topology topo;
    Scheme scheme = Scheme::P4TE;
    uint64_t seed = 1;
    SimTime duration = from_sec(500);
    SimTime hard_stop = 0;  // 0 -> derived from duration

    // physical layer
    SimTime host_prop = from_us(1);
    SimTime core_prop = from_us(1);
    double queue_cap_factor = 0.2;
    SimTime port_latency = 652;
    SimTime recirc_delay = 75;
    int small_pkt_cost = 44;  // millislots, ACK/FACK-sized frames
    int probe_cost = 44;
    bool byte_mode = false;

    // monitoring
    int delta = 2;
    int depth_groups = 4;
    double cir_frac = 0.90;
    double pir_frac = 1.00;
    double burst_frac = 0.05;
    double safe_short_frac = 0.90;
    double safe_large_frac = 0.10;
    double srtcm_burst_frac = 0.05;

    // path control
    size_t flowlet_slots = 1u << 16;
    SimTime flowlet_gap = from_ms(40);
    SimTime control_delay = from_us(10);

    // rate adaptation
    int64_t rate_window_bytes = 0;  // 0 -> mean_rtt x bottleneck rate
    SimTime mean_rtt = from_ms(70);

    // baselines
    int ecn_threshold = 6;
    SimTime probe_interval = from_ms(70);

    TransportConfig transport;

    int64_t resolved_rate_window() const;
};

class Simulation {
  public:
    explicit Simulation(SimParams params);

    void add_flows(const std::vector<FlowSpec>& flows);
    RunReport run();

    // introspection for tests
    EventQueue& events() { return eq_; }
    const Topology& topo() const { return p_.topo; }
    struct SwitchDev;
    SwitchDev& switch_dev(int sw) { return *switches_[sw]; }
    uint64_t new_flowlet_count(int sw, int port) const;

    struct SwitchDev {
        int id = 0;
        bool is_leaf = false;
        std::vector<PortDir> dir;
        std::vector<int> out_channel;  // port -> channel index
        std::vector<Topology::DownEntry> mat_down;
        std::vector<int> upward_ports;

        EgressMonitorState egress;
        IngressMonitorState ingress;
        std::unique_ptr<FlowletTable> flowlets;
        std::optional<UpwardTable> mat_up_queuedepth;
        std::optional<UpwardTable> mat_up_linkutil;
        std::unique_ptr<LeafRateRecords> records;
        std::unique_ptr<HulaLeafState> hula;

        std::vector<uint64_t> new_flowlet_per_port;
        uint64_t facks_generated = 0;
        uint64_t feedback_pkts = 0;
        uint64_t recirc_pkts = 0;
        uint64_t cp_dropped = 0;
        uint64_t hula_fallbacks = 0;
    };

  private:
    struct Channel {
        int from_node, from_port, to_node, to_port;
        bool from_is_host, to_is_host;
        bool upward;  // leaf -> spine
        std::unique_ptr<Link> link;
        UtilEstimator util;
    };

    struct FlowCtx {
        std::unique_ptr<FlowSender> sender;
        std::unique_ptr<FlowReceiver> receiver;
        FlowSpec spec;
    };

    int cost_of(const Packet& p) const;
    void build_network();
    int add_channel(int from_node, int from_port, int to_node, int to_port, bool from_host,
                    bool to_host, int64_t bw, SimTime prop, bool upward);

    void inject_from_host(int host, Packet&& p);
    void deliver(int channel_id, Packet&& p);
    void host_receive(int host, Packet&& p);
    void switch_receive(int sw, int in_port, Packet&& p);
    void route_and_forward(SwitchDev& sw, Packet&& p);
    int route(SwitchDev& sw, Packet& p);
    void egress_process(SwitchDev& sw, int port, Packet&& p);
    void handle_probe(SwitchDev& sw, int in_port, Packet&& p);
    void probe_tick(int leaf);
    void ewma_tick();
    void check_reorder(const Packet& p);
    void finish_flow(const FlowCompletionRecord& rec);
    void collect_report(RunReport& r);

    SimParams p_;
    EventQueue eq_;
    uint64_t hash_salt_;
    int64_t rate_window_;

    std::vector<Channel> channels_;
    std::vector<std::unique_ptr<SwitchDev>> switches_;
    std::vector<int> host_uplink_;    // host -> channel
    std::vector<int> host_downlink_;  // leaf-side channel toward host

    std::unordered_map<FiveTuple, FlowCtx, FiveTupleKeyHash> flows_;
    std::vector<FlowCompletionRecord> completions_;
    int active_flows_ = 0;

    std::unordered_map<uint64_t, uint32_t> reorder_last_;
    uint64_t reorder_violations_ = 0;

    uint64_t injected_ = 0;
    uint64_t delivered_ = 0;
    uint64_t probes_sent_ = 0;
    uint64_t unknown_flow_acks_ = 0;
    uint64_t unroutable_ = 0;
    uint64_t spine_upward_selects_ = 0;
    bool periodic_armed_ = false;
};

}  // namespace p4te
