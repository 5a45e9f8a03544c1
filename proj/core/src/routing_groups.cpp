#include "p4te/routing_groups.hpp"

#include <algorithm>
#include <stdexcept>

#include "p4te/topology.hpp"

namespace p4te {

UpwardTable UpwardTable::for_queue_depth(const std::vector<int>& upward_ports, int delta,
                                         int group_count) {
    if (upward_ports.empty()) throw ConfigError("queue-depth table needs upward ports");
    if (delta < 1 || group_count < 2) throw ConfigError("need delta >= 1 and >= 2 depth groups");
    UpwardTable t;
    t.metric_ = MetricKind::QUEUE_DEPTH;
    t.groups_.resize(group_count);
    for (int g = 0; g < group_count; ++g) t.groups_[g].id = g;
    // Group 0 covers [0, delta]; following groups cover delta-wide ranges;
    // the last group catches everything past the upper bound.
    for (int g = 0; g + 1 < group_count; ++g) {
        t.depth_bounds_.push_back(static_cast<int64_t>(delta) * (g + 1));
    }
    for (int p : upward_ports) t.add_port(p);
    return t;
}

UpwardTable UpwardTable::for_link_util(const std::vector<int>& upward_ports) {
    if (upward_ports.empty()) throw ConfigError("link-util table needs upward ports");
    UpwardTable t;
    t.metric_ = MetricKind::LINK_UTIL;
    t.groups_.resize(3);  // one routing-group per color
    for (int g = 0; g < 3; ++g) t.groups_[g].id = g;
    for (int p : upward_ports) t.add_port(p);
    return t;
}

int UpwardTable::group_of(int port) const {
    auto it = port_to_group_.find(port);
    return it == port_to_group_.end() ? -1 : it->second;
}

int UpwardTable::group_for_depth(int64_t depth) const {
    auto it = std::lower_bound(depth_bounds_.begin(), depth_bounds_.end(), depth);
    return static_cast<int>(it - depth_bounds_.begin());
}

int UpwardTable::group_for_event(const TrafficEvent& e) const {
    if (metric_ == MetricKind::QUEUE_DEPTH) return group_for_depth(e.depth);
    return group_for_color(e.color);
}

int UpwardTable::select(uint64_t hash) const {
    for (const auto& g : groups_) {
        if (!g.members.empty()) {
            return g.members[hash % g.members.size()];
        }
    }
    throw std::logic_error("upward table has no ports in any routing-group");
}

bool UpwardTable::reconfigure(const TrafficEvent& e) {
    auto it = port_to_group_.find(e.port);
    if (it == port_to_group_.end()) return false;
    int cur = it->second;
    int next = group_for_event(e);
    if (next == cur) return true;  // idempotent
    auto& m = groups_[cur].members;
    m.erase(std::find(m.begin(), m.end(), e.port));
    insert_sorted(next, e.port);
    it->second = next;
    return true;
}

void UpwardTable::remove_port(int port) {
    auto it = port_to_group_.find(port);
    if (it == port_to_group_.end()) return;
    auto& m = groups_[it->second].members;
    m.erase(std::find(m.begin(), m.end(), port));
    port_to_group_.erase(it);
}

void UpwardTable::add_port(int port) {
    if (port_to_group_.count(port)) return;
    insert_sorted(0, port);
    port_to_group_[port] = 0;
}

void UpwardTable::insert_sorted(int group, int port) {
    auto& m = groups_[group].members;
    m.insert(std::upper_bound(m.begin(), m.end(), port), port);
}

bool UpwardTable::partition_ok(const std::vector<int>& live_ports) const {
    size_t total = 0;
    for (const auto& g : groups_) {
        total += g.members.size();
        for (int p : g.members) {
            auto it = port_to_group_.find(p);
            if (it == port_to_group_.end() || it->second != g.id) return false;
        }
    }
    if (total != live_ports.size() || total != port_to_group_.size()) return false;
    for (int p : live_ports) {
        if (!port_to_group_.count(p)) return false;
    }
    return true;
}

std::pair<UpwardTable, UpwardTable> init_tables(const std::vector<int>& upward_ports, int delta,
                                                int depth_group_count) {
    return {UpwardTable::for_queue_depth(upward_ports, delta, depth_group_count),
            UpwardTable::for_link_util(upward_ports)};
}

}  // namespace p4te
