#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p4te/flowlet.hpp"
#include "p4te/packet.hpp"
#include "p4te/routing_groups.hpp"
#include "p4te/topology.hpp"

namespace p4te {

enum class Scheme { P4TE, P4TE_NRA, ECMP, HULA };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

// Longest-prefix match over the downward table; miss means the packet
// continues to upward selection.
std::optional<int> downward_lookup(const std::vector<Topology::DownEntry>& mat_down,
                                   uint32_t dst_addr);

struct UpwardSelectResult {
    int port = -1;
    bool new_flowlet = false;
    FlowletStamp stamp;
};

// Two-table flowlet path selection: within the flowlet gap the last port
// is reused; a new flowlet picks the queue-depth candidate for short flows
// and the utilization candidate for large flows, falling back to the other
// when the candidate's utilization color is not GREEN.
UpwardSelectResult upward_path_select(const Packet& pkt, const UpwardTable& mat_up_queuedepth,
                                      const UpwardTable& mat_up_linkutil, FlowletTable& flowlets,
                                      const std::vector<Color>& port_utilizations, SimTime now,
                                      uint64_t hash_salt);

}  // namespace p4te
