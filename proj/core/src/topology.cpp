#include "p4te/topology.hpp"

namespace p4te {

PortDir Topology::port_direction(int sw, int port) const {
    if (sw < 0 || sw >= switch_count() || port < 0 || port >= port_count(sw)) {
        throw ConfigError("unknown port " + std::to_string(port) + " on switch " +
                          std::to_string(sw));
    }
    if (!is_leaf(sw)) return PortDir::DOWNWARD;  // spines sit at the top of the tree
    return port < hosts_per_leaf ? PortDir::DOWNWARD : PortDir::UPWARD;
}

Topology::Peer Topology::peer(int sw, int port) const {
    port_direction(sw, port);  // validates
    if (is_leaf(sw)) {
        if (port < hosts_per_leaf) return {true, host_of(sw, port), 0};
        return {false, n_leaf + (port - hosts_per_leaf), sw};
    }
    return {false, port, leaf_spine_port(spine_index(sw))};
}

std::vector<int> Topology::upward_ports(int sw) const {
    std::vector<int> out;
    for (int p = 0; p < port_count(sw); ++p) {
        if (port_direction(sw, p) == PortDir::UPWARD) out.push_back(p);
    }
    return out;
}

std::vector<Topology::DownEntry> Topology::downward_entries(int sw) const {
    std::vector<DownEntry> out;
    if (is_leaf(sw)) {
        for (int i = 0; i < hosts_per_leaf; ++i) {
            out.push_back({host_prefix(sw, i), leaf_host_port(i)});
        }
    } else {
        for (int l = 0; l < n_leaf; ++l) {
            out.push_back({leaf_subnet(l), spine_leaf_port(l)});
        }
    }
    return out;
}

int Topology::host_for_addr(uint32_t addr) const {
    for (int h = 0; h < host_count(); ++h) {
        if (host_addr(h) == addr) return h;
    }
    return -1;
}

Topology build_leaf_spine(int n_leaf, int n_spine, int hosts_per_leaf, int64_t edge_bw_pps,
                          int64_t core_bw_pps, int max_ports) {
    if (n_leaf < 1 || n_spine < 1 || hosts_per_leaf < 1) {
        throw ConfigError("leaf/spine/host counts must all be >= 1");
    }
    if (edge_bw_pps < 1 || core_bw_pps < 1) throw ConfigError("link rates must be >= 1 pps");
    if (hosts_per_leaf + n_spine > max_ports) {
        throw ConfigError("leaf needs " + std::to_string(hosts_per_leaf + n_spine) +
                          " ports but switches have " + std::to_string(max_ports));
    }
    if (n_leaf > max_ports) {
        throw ConfigError("spine needs " + std::to_string(n_leaf) + " ports but switches have " +
                          std::to_string(max_ports));
    }
    Topology t;
    t.n_leaf = n_leaf;
    t.n_spine = n_spine;
    t.hosts_per_leaf = hosts_per_leaf;
    t.edge_bw_pps = edge_bw_pps;
    t.core_bw_pps = core_bw_pps;
    return t;
}

}  // namespace p4te
