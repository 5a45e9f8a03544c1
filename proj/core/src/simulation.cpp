#include "p4te/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace p4te {

namespace {

int64_t frac_units(double frac, int64_t bw_pps) {
    return std::max<int64_t>(1, static_cast<int64_t>(std::llround(frac * static_cast<double>(bw_pps) * 1000.0)));
}

uint64_t reorder_key(const FlowletStamp& s) {
    return (static_cast<uint64_t>(s.origin_switch) << 48) | (static_cast<uint64_t>(s.slot) << 32) |
           s.generation;
}

}  // namespace

int64_t SimParams::resolved_rate_window() const {
    if (rate_window_bytes > 0) return rate_window_bytes;
    int64_t bottleneck = std::min(topo.edge_bw_pps, topo.core_bw_pps);
    double pkts = to_sec(mean_rtt) * static_cast<double>(bottleneck);
    int64_t whole = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(pkts)));
    return whole * transport.mss_bytes;
}

Simulation::Simulation(SimParams params)
    : p_(std::move(params)),
      hash_salt_(splitmix64(p_.seed ^ 0xa5a5a5a5ULL)),
      rate_window_(p_.resolved_rate_window()) {
    if (p_.hard_stop == 0) p_.hard_stop = std::max<SimTime>(p_.duration * 50, from_sec(20000));
    build_network();
}

int Simulation::add_channel(int from_node, int from_port, int to_node, int to_port, bool from_host,
                            bool to_host, int64_t bw, SimTime prop, bool upward) {
    int id = static_cast<int>(channels_.size());
    Link::Config lc;
    lc.bandwidth_pps = bw;
    lc.prop_delay = prop;
    lc.queue_capacity_pkts =
        std::max<int>(1, static_cast<int>(p_.queue_cap_factor * static_cast<double>(bw)));
    auto deliver = [this, id](Packet&& pkt) { this->deliver(id, std::move(pkt)); };
    channels_.push_back(Channel{from_node, from_port, to_node, to_port, from_host, to_host, upward,
                                std::make_unique<Link>(eq_, lc, deliver), UtilEstimator{}});
    return id;
}

void Simulation::build_network() {
    const Topology& t = p_.topo;
    bool p4 = p_.scheme == Scheme::P4TE || p_.scheme == Scheme::P4TE_NRA;

    host_uplink_.assign(t.host_count(), -1);
    host_downlink_.assign(t.host_count(), -1);

    for (int sw = 0; sw < t.switch_count(); ++sw) {
        auto dev = std::make_unique<SwitchDev>();
        dev->id = sw;
        dev->is_leaf = t.is_leaf(sw);
        int ports = t.port_count(sw);
        dev->dir.resize(ports);
        dev->out_channel.assign(ports, -1);
        for (int port = 0; port < ports; ++port) dev->dir[port] = t.port_direction(sw, port);
        dev->mat_down = t.downward_entries(sw);
        dev->upward_ports = t.upward_ports(sw);
        dev->new_flowlet_per_port.assign(ports, 0);
        switches_.push_back(std::move(dev));
    }

    // host access links, both directions
    for (int h = 0; h < t.host_count(); ++h) {
        int leaf = t.host_leaf(h);
        int lport = t.leaf_host_port(t.host_idx(h));
        int host_node = t.switch_count() + h;
        host_uplink_[h] = add_channel(host_node, 0, leaf, lport, true, false, t.edge_bw_pps,
                                      p_.host_prop, false);
        host_downlink_[h] =
            add_channel(leaf, lport, host_node, 0, false, true, t.edge_bw_pps, p_.host_prop, false);
        switches_[leaf]->out_channel[lport] = host_downlink_[h];
    }
    // leaf-spine links, both directions
    for (int leaf = 0; leaf < t.n_leaf; ++leaf) {
        for (int s = 0; s < t.n_spine; ++s) {
            int spine = t.n_leaf + s;
            int lport = t.leaf_spine_port(s);
            int sport = t.spine_leaf_port(leaf);
            int up = add_channel(leaf, lport, spine, sport, false, false, t.core_bw_pps,
                                 p_.core_prop, true);
            int down = add_channel(spine, sport, leaf, lport, false, false, t.core_bw_pps,
                                   p_.core_prop, false);
            switches_[leaf]->out_channel[lport] = up;
            switches_[spine]->out_channel[sport] = down;
        }
    }

    // per-switch state
    for (auto& swp : switches_) {
        SwitchDev& sw = *swp;
        int ports = static_cast<int>(sw.dir.size());
        sw.flowlets = std::make_unique<FlowletTable>(p_.flowlet_slots, p_.flowlet_gap);
        if (p4) {
            sw.egress.delta = p_.delta;
            sw.egress.ports.resize(ports);
            sw.ingress.class_meters.resize(static_cast<size_t>(ports) * 2);
            sw.ingress.port_utilizations.assign(ports, Color::GREEN);
            for (int port = 0; port < ports; ++port) {
                int64_t bw = channels_[sw.out_channel[port]].link->config().bandwidth_pps;
                TrTcmMeter::Config mc;
                mc.cir_units_per_s = frac_units(p_.cir_frac, bw);
                mc.pir_units_per_s = frac_units(p_.pir_frac, bw);
                mc.cbs_units = frac_units(p_.burst_frac, bw);
                mc.pbs_units = frac_units(p_.burst_frac, bw);
                sw.egress.ports[port].meter = TrTcmMeter(mc, 0);
                // ingress meters measure the incoming side of the same pair
                sw.ingress.meter(port, TrafficClass::SHORT) = SrTcmMeter(
                    {frac_units(p_.safe_short_frac, bw), frac_units(p_.srtcm_burst_frac, bw)}, 0);
                sw.ingress.meter(port, TrafficClass::LARGE) = SrTcmMeter(
                    {frac_units(p_.safe_large_frac, bw), frac_units(p_.srtcm_burst_frac, bw)}, 0);
            }
            if (!sw.upward_ports.empty()) {
                auto [d, u] = init_tables(sw.upward_ports, p_.delta, p_.depth_groups);
                sw.mat_up_queuedepth = std::move(d);
                sw.mat_up_linkutil = std::move(u);
            }
            if (sw.is_leaf) sw.records = std::make_unique<LeafRateRecords>(rate_window_);
        }
        if (p_.scheme == Scheme::HULA && sw.is_leaf) {
            sw.hula = std::make_unique<HulaLeafState>(p_.topo.n_leaf, p_.probe_interval);
        }
    }
}

int Simulation::cost_of(const Packet& pkt) const {
    if (p_.byte_mode) {
        return static_cast<int>(
            std::max<int64_t>(1, (static_cast<int64_t>(pkt.size_bytes) * 1000 +
                                  p_.transport.mss_bytes - 1) /
                                     p_.transport.mss_bytes));
    }
    if (pkt.has(flag::PROBE)) return p_.probe_cost;
    if (pkt.has(flag::ACK)) return p_.small_pkt_cost;
    return kFullPacketCost;
}

void Simulation::add_flows(const std::vector<FlowSpec>& flows) {
    for (const auto& spec : flows) {
        FiveTuple tuple;
        tuple.src_addr = p_.topo.host_addr(spec.src_host);
        tuple.dst_addr = p_.topo.host_addr(spec.dst_host);
        tuple.src_port = static_cast<uint16_t>(10000 + (spec.label % 50000));
        tuple.dst_port = 5001;
        tuple.flow_label = spec.label;

        FlowCtx ctx;
        ctx.spec = spec;
        int src = spec.src_host;
        int dst = spec.dst_host;
        ctx.sender = std::make_unique<FlowSender>(
            p_.transport, eq_, spec.label, tuple, spec.cls, spec.size_bytes,
            [this, src](Packet&& p) { inject_from_host(src, std::move(p)); },
            [this](const FlowCompletionRecord& rec) { finish_flow(rec); });
        ctx.receiver = std::make_unique<FlowReceiver>(
            tuple, spec.cls, [this, dst](Packet&& p) { inject_from_host(dst, std::move(p)); });
        FlowSender* sender = ctx.sender.get();
        flows_.emplace(tuple, std::move(ctx));
        ++active_flows_;
        eq_.schedule(spec.start, [sender] { sender->begin(); });
    }
}

void Simulation::inject_from_host(int host, Packet&& p) {
    ++injected_;
    int cost = cost_of(p);
    Channel& ch = channels_[host_uplink_[host]];
    ch.link->enqueue(std::move(p), cost);
    ch.util.on_tx(cost);
}

void Simulation::deliver(int channel_id, Packet&& p) {
    Channel& ch = channels_[channel_id];
    if (ch.to_is_host) {
        host_receive(ch.to_node - p_.topo.switch_count(), std::move(p));
    } else {
        switch_receive(ch.to_node, ch.to_port, std::move(p));
    }
}

void Simulation::host_receive(int host, Packet&& p) {
    ++delivered_;
    if (p.is_data()) {
        check_reorder(p);
        auto it = flows_.find(p.five_tuple());
        if (it == flows_.end()) {
            ++unknown_flow_acks_;
            return;
        }
        it->second.receiver->on_data(p);
        return;
    }
    if (p.has(flag::ACK)) {
        auto it = flows_.find(p.flow_key());
        if (it == flows_.end()) {
            ++unknown_flow_acks_;
            return;
        }
        it->second.sender->on_ack(p);
        return;
    }
    (void)host;
}

void Simulation::switch_receive(int sw_id, int in_port, Packet&& p) {
    SwitchDev& sw = *switches_[sw_id];
    SimTime now = eq_.now();
    p.metadata.reset();
    p.metadata.ingress_timestamp = now;

    if (p.has(flag::PROBE)) {
        handle_probe(sw, in_port, std::move(p));
        return;
    }

    bool p4 = p_.scheme == Scheme::P4TE || p_.scheme == Scheme::P4TE_NRA;
    if (p4 && p.is_data()) {
        if (sw.is_leaf && sw.dir[in_port] == PortDir::DOWNWARD) {
            // data entering from an attached host: rate-control window check
            if (sw.records->admit_data(p.five_tuple(), p.seq)) p.set(flag::RATE_CTRL_EXEMPT);
        }
        p.metadata.incoming_packet_color =
            ingress_class_monitor(sw.ingress, in_port, p.traffic_class, cost_of(p), now);
    }
    route_and_forward(sw, std::move(p));
}

int Simulation::route(SwitchDev& sw, Packet& p) {
    auto down = downward_lookup(sw.mat_down, p.dst_addr);
    if (down) return *down;

    if (!sw.is_leaf) ++spine_upward_selects_;
    if (sw.upward_ports.empty()) return -1;

    SimTime now = eq_.now();
    uint64_t h = five_tuple_hash(p.five_tuple(), hash_salt_);
    switch (p_.scheme) {
        case Scheme::P4TE:
        case Scheme::P4TE_NRA: {
            auto r = upward_path_select(p, *sw.mat_up_queuedepth, *sw.mat_up_linkutil,
                                        *sw.flowlets, sw.ingress.port_utilizations, now,
                                        hash_salt_);
            r.stamp.origin_switch = static_cast<uint16_t>(sw.id);
            p.stamp = r.stamp;
            if (r.new_flowlet) ++sw.new_flowlet_per_port[r.port];
            return r.port;
        }
        case Scheme::ECMP: {
            auto touch = sw.flowlets->touch(h, now);
            touch.stamp.origin_switch = static_cast<uint16_t>(sw.id);
            p.stamp = touch.stamp;
            if (!touch.new_flowlet && touch.port >= 0) return touch.port;
            int port = ecmp_pick(p.five_tuple(), sw.upward_ports, hash_salt_);
            sw.flowlets->commit_port(touch.slot, port);
            ++sw.new_flowlet_per_port[port];
            return port;
        }
        case Scheme::HULA: {
            auto touch = sw.flowlets->touch(h, now);
            touch.stamp.origin_switch = static_cast<uint16_t>(sw.id);
            p.stamp = touch.stamp;
            if (!touch.new_flowlet && touch.port >= 0) return touch.port;
            int dst_leaf = static_cast<int>((p.dst_addr >> 16) & 0xff);
            int port = -1;
            if (sw.hula) {
                const auto& best = sw.hula->best(dst_leaf);
                port = best.port;
            }
            if (port < 0) {
                port = ecmp_pick(p.five_tuple(), sw.upward_ports, hash_salt_);
                ++sw.hula_fallbacks;
            }
            sw.flowlets->commit_port(touch.slot, port);
            ++sw.new_flowlet_per_port[port];
            return port;
        }
    }
    return -1;
}

void Simulation::route_and_forward(SwitchDev& sw, Packet&& p) {
    int egress = route(sw, p);
    if (egress < 0) {
        ++unroutable_;
        return;
    }
    bool p4 = p_.scheme == Scheme::P4TE || p_.scheme == Scheme::P4TE_NRA;
    if (p4 && sw.is_leaf && sw.dir[egress] == PortDir::DOWNWARD && p.has(flag::ACK)) {
        sw.records->observe_ack(p.flow_key(), p);
    }
    p.metadata.egress_port = egress;
    SwitchDev* swp = &sw;
    eq_.schedule_in(p_.port_latency,
                    [this, swp, egress, pkt = std::move(p)]() mutable {
                        egress_process(*swp, egress, std::move(pkt));
                    });
}

void Simulation::egress_process(SwitchDev& sw, int port, Packet&& p) {
    SimTime now = eq_.now();
    Channel& ch = channels_[sw.out_channel[port]];
    if (ch.link->full()) {
        ch.link->count_drop(p);
        return;
    }
    int depth = ch.link->depth();
    p.metadata.queue_depth_seen = depth;
    int cost = cost_of(p);

    if (p_.scheme == Scheme::ECMP || p_.scheme == Scheme::HULA) {
        if (p_.ecn_threshold > 0) ecn_mark(p, depth, EcnConfig{p_.ecn_threshold});
    } else {
        auto mon = egress_stage_monitor(sw.egress, port, depth, cost, now);
        if (mon.feedback_to_cp) {
            ++sw.feedback_pkts;
            SwitchDev* swp = &sw;
            auto depth_ev = mon.depth_event;
            auto util_ev = mon.util_event;
            eq_.schedule_in(p_.control_delay, [this, swp, depth_ev, util_ev] {
                if (depth_ev && swp->mat_up_queuedepth &&
                    !swp->mat_up_queuedepth->reconfigure(*depth_ev)) {
                    ++swp->cp_dropped;
                }
                if (util_ev && swp->mat_up_linkutil &&
                    !swp->mat_up_linkutil->reconfigure(*util_ev)) {
                    ++swp->cp_dropped;
                }
            });
        }
        if (mon.recirculate) {
            ++sw.recirc_pkts;
            SwitchDev* swp = &sw;
            Color c = mon.util_event->color;
            eq_.schedule_in(p_.recirc_delay,
                            [swp, port, c] { swp->ingress.port_utilizations[port] = c; });
        }
        if (p_.scheme == Scheme::P4TE && p.is_data()) {
            RateDecision d = rate_control_decide(p, sw.egress.ports[port].old_packet_color,
                                                 sw.is_leaf ? sw.records.get() : nullptr);
            if (d != RateDecision::NONE) {
                Packet fack = generate_fack(p, d, p_.transport.mss_bytes);
                p.set(flag::RATE_CTRL_APPLIED);
                ++sw.facks_generated;
                ++injected_;
                fack.metadata.ingress_timestamp = now;
                route_and_forward(sw, std::move(fack));
            }
        }
    }

    ch.link->enqueue(std::move(p), cost);
    ch.util.on_tx(cost);
}

void Simulation::handle_probe(SwitchDev& sw, int in_port, Packet&& p) {
    ++delivered_;  // probes are consumed at each switch and re-cloned onward
    SimTime now = eq_.now();
    // reverse channel of the arrival port carries data toward the origin
    double util = std::max(p.probe_util, channels_[sw.out_channel[in_port]].util.ewma);
    if (sw.is_leaf) {
        if (sw.hula) sw.hula->update(p.probe_origin, in_port, util, now);
        return;
    }
    for (int port = 0; port < static_cast<int>(sw.dir.size()); ++port) {
        if (port == in_port) continue;
        Channel& ch = channels_[sw.out_channel[port]];
        Packet clone = p;
        clone.probe_util = util;
        ++injected_;
        ++probes_sent_;
        int cost = cost_of(clone);
        ch.link->enqueue(std::move(clone), cost);
        ch.util.on_tx(cost);
    }
}

void Simulation::probe_tick(int leaf) {
    SwitchDev& sw = *switches_[leaf];
    for (int port : sw.upward_ports) {
        Packet probe;
        probe.set(flag::PROBE);
        probe.size_bytes = 64;
        probe.probe_origin = static_cast<int16_t>(leaf);
        probe.probe_util = 0.0;
        ++injected_;
        ++probes_sent_;
        Channel& ch = channels_[sw.out_channel[port]];
        int cost = cost_of(probe);
        ch.link->enqueue(std::move(probe), cost);
        ch.util.on_tx(cost);
    }
}

void Simulation::ewma_tick() {
    double interval_s = to_sec(p_.probe_interval);
    for (auto& ch : channels_) {
        if (ch.from_is_host) continue;
        ch.util.sample(interval_s, ch.link->config().bandwidth_pps * 1000);
    }
}

void Simulation::check_reorder(const Packet& p) {
    if (!p.stamp.set) return;
    uint64_t key = reorder_key(p.stamp);
    auto [it, inserted] = reorder_last_.try_emplace(key, p.stamp.index);
    if (!inserted) {
        if (p.stamp.index <= it->second) {
            ++reorder_violations_;
        } else {
            it->second = p.stamp.index;
        }
    }
}

void Simulation::finish_flow(const FlowCompletionRecord& rec) {
    completions_.push_back(rec);
    --active_flows_;
}

RunReport Simulation::run() {
    // periodic machinery for HULA: leaf probes plus the shared EWMA clock
    if (p_.scheme == Scheme::HULA && !periodic_armed_) {
        periodic_armed_ = true;
        struct Ticker {
            Simulation* sim;
            void operator()() const {
                sim->ewma_tick();
                for (int leaf = 0; leaf < sim->p_.topo.n_leaf; ++leaf) sim->probe_tick(leaf);
                if (sim->eq_.now() < sim->p_.duration || sim->active_flows_ > 0) {
                    sim->eq_.schedule_in(sim->p_.probe_interval, *this);
                }
            }
        };
        eq_.schedule(0, Ticker{this});
    }

    eq_.run_until(p_.hard_stop);

    RunReport r;
    collect_report(r);
    return r;
}

uint64_t Simulation::new_flowlet_count(int sw, int port) const {
    return switches_[sw]->new_flowlet_per_port[port];
}

void Simulation::collect_report(RunReport& r) {
    const Topology& t = p_.topo;
    r.scheme = to_string(p_.scheme);
    r.seed = p_.seed;
    r.sim_end = eq_.now();
    r.rate_window_bytes = rate_window_;
    r.flows = completions_;
    std::sort(r.flows.begin(), r.flows.end(),
              [](const FlowCompletionRecord& a, const FlowCompletionRecord& b) {
                  return a.flow_id < b.flow_id;
              });

    uint64_t dropped = 0;
    for (const auto& ch : channels_) {
        const auto& c = ch.link->counters();
        dropped += c.drop;
        LinkRow row;
        if (ch.from_is_host) {
            row.node = "H" + std::to_string(ch.from_node - t.switch_count());
            row.dir = "host";
        } else {
            bool leaf = t.is_leaf(ch.from_node);
            row.node = (leaf ? "L" : "S") +
                       std::to_string(leaf ? ch.from_node : t.spine_index(ch.from_node));
            row.dir = ch.upward ? "up" : "down";
        }
        row.port = ch.from_is_host ? 0 : ch.from_port;
        row.enq = c.enq;
        row.deq = c.deq;
        row.drop = c.drop;
        row.bytes = c.bytes;
        row.data_enq = c.data_enq;
        r.links.push_back(row);
    }
    r.injected = injected_;
    r.delivered = delivered_;
    r.dropped = dropped;
    r.probes = probes_sent_;
    r.reorder_violations = reorder_violations_;
    r.unknown_flow_acks = unknown_flow_acks_;
    r.spine_upward_selects = spine_upward_selects_;

    for (const auto& swp : switches_) {
        r.facks += swp->facks_generated;
        r.feedbacks += swp->feedback_pkts;
        r.recircs += swp->recirc_pkts;
        r.cp_events_dropped += swp->cp_dropped;
        r.hula_fallbacks += swp->hula_fallbacks;
    }

    // per-leaf upward load stddev over transmitted packets
    for (int leaf = 0; leaf < t.n_leaf; ++leaf) {
        std::vector<uint64_t> tx;
        for (int port : switches_[leaf]->upward_ports) {
            tx.push_back(channels_[switches_[leaf]->out_channel[port]].link->counters().deq);
        }
        r.upward_stddev.push_back(population_stddev(tx));
    }

    auto fail = [&r](const std::string& msg) {
        r.invariants_ok = false;
        r.invariant_failures.push_back(msg);
    };

    if (active_flows_ != 0) {
        fail("flows incomplete at hard stop: " + std::to_string(active_flows_));
    }
    // conservation: everything injected was delivered or dropped
    uint64_t in_flight = injected_ - delivered_ - dropped;
    if (active_flows_ == 0 && in_flight != 0) {
        fail("conservation: injected=" + std::to_string(injected_) + " delivered=" +
             std::to_string(delivered_) + " dropped=" + std::to_string(dropped));
    }
    for (const auto& ch : channels_) {
        if (!ch.link->counters().conserved(static_cast<size_t>(ch.link->depth()))) {
            fail("link counter mismatch");
            break;
        }
    }
    // receiver coverage
    for (const auto& [tuple, ctx] : flows_) {
        if (ctx.sender->done() && !ctx.receiver->coverage_exact(ctx.spec.size_bytes)) {
            fail("delivered stream does not cover flow exactly");
            break;
        }
    }
    // routing-group partition and meter bounds
    for (const auto& swp : switches_) {
        if (swp->mat_up_queuedepth && !swp->mat_up_queuedepth->partition_ok(swp->upward_ports)) {
            fail("queue-depth table partition violated at switch " + std::to_string(swp->id));
        }
        if (swp->mat_up_linkutil && !swp->mat_up_linkutil->partition_ok(swp->upward_ports)) {
            fail("link-util table partition violated at switch " + std::to_string(swp->id));
        }
        for (const auto& ps : swp->egress.ports) {
            if (ps.meter.config().pir_units_per_s > 0 && !ps.meter.bounds_ok()) {
                fail("trtcm bounds violated");
            }
        }
        for (const auto& m : swp->ingress.class_meters) {
            if (m.config().rate_units_per_s > 0 && !m.bounds_ok()) fail("srtcm bounds violated");
        }
    }
    // rate-control window guarantee
    if (p_.scheme == Scheme::P4TE) {
        for (const auto& f : r.flows) {
            uint64_t bound = static_cast<uint64_t>((f.size_bytes + rate_window_ - 1) / rate_window_);
            if (f.facks_received > bound) {
                fail("flow " + std::to_string(f.flow_id) + " got " +
                     std::to_string(f.facks_received) + " FACKs, bound " + std::to_string(bound));
            }
        }
    }
    if (reorder_violations_ != 0) {
        fail("intra-flowlet reordering observed: " + std::to_string(reorder_violations_));
    }
}

}  // namespace p4te
