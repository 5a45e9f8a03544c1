#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "p4te/address.hpp"

namespace p4te {

enum class PortDir : uint8_t { UPWARD, DOWNWARD };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Node ids: switches first (leaves 0..n_leaf-1, spines n_leaf..n_leaf+n_spine-1),
// then hosts. Leaf ports 0..H-1 face hosts, H..H+S-1 face spines; spine
// ports 0..L-1 face leaves.
struct Topology {
    int n_leaf = 0;
    int n_spine = 0;
    int hosts_per_leaf = 0;
    int64_t edge_bw_pps = 0;
    int64_t core_bw_pps = 0;

    int switch_count() const { return n_leaf + n_spine; }
    int host_count() const { return n_leaf * hosts_per_leaf; }
    bool is_leaf(int sw) const { return sw < n_leaf; }
    int spine_index(int sw) const { return sw - n_leaf; }

    int host_leaf(int host) const { return host / hosts_per_leaf; }
    int host_idx(int host) const { return host % hosts_per_leaf; }
    int host_of(int leaf, int idx) const { return leaf * hosts_per_leaf + idx; }
    uint32_t host_addr(int host) const { return host_address(host_leaf(host), host_idx(host)); }

    int leaf_port_count() const { return hosts_per_leaf + n_spine; }
    int port_count(int sw) const { return is_leaf(sw) ? leaf_port_count() : n_leaf; }

    PortDir port_direction(int sw, int port) const;

    struct Peer {
        bool is_host;
        int id;    // host id or switch id
        int port;  // peer's port (0 for hosts)
    };
    Peer peer(int sw, int port) const;

    // Leaf port carrying traffic for a host / spine, and the reverse maps.
    int leaf_host_port(int idx) const { return idx; }
    int leaf_spine_port(int spine) const { return hosts_per_leaf + spine; }
    int spine_leaf_port(int leaf) const { return leaf; }

    std::vector<int> upward_ports(int sw) const;

    struct DownEntry {
        Prefix prefix;
        int port;
    };
    // Downward table contents per switch: connected hosts at leaves,
    // leaf subnets at spines.
    std::vector<DownEntry> downward_entries(int sw) const;

    int host_for_addr(uint32_t addr) const;
};

Topology build_leaf_spine(int n_leaf, int n_spine, int hosts_per_leaf, int64_t edge_bw_pps,
                          int64_t core_bw_pps, int max_ports = 8);

}  // namespace p4te
