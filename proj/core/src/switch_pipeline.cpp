#include "p4te/switch_pipeline.hpp"

namespace p4te {

Scheme scheme_from_string(const std::string& s) {
    if (s == "p4te") return Scheme::P4TE;
    if (s == "p4te-nra") return Scheme::P4TE_NRA;
    if (s == "ecmp") return Scheme::ECMP;
    if (s == "hula") return Scheme::HULA;
    throw ConfigError("unknown scheme '" + s + "' (expected p4te|p4te-nra|ecmp|hula)");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::P4TE: return "p4te";
        case Scheme::P4TE_NRA: return "p4te-nra";
        case Scheme::ECMP: return "ecmp";
        case Scheme::HULA: return "hula";
    }
    return "?";
}

std::optional<int> downward_lookup(const std::vector<Topology::DownEntry>& mat_down,
                                   uint32_t dst_addr) {
    int best_len = -1;
    int best_port = -1;
    for (const auto& e : mat_down) {
        if (e.prefix.len > best_len && e.prefix.matches(dst_addr)) {
            best_len = e.prefix.len;
            best_port = e.port;
        }
    }
    if (best_port < 0) return std::nullopt;
    return best_port;
}

UpwardSelectResult upward_path_select(const Packet& pkt, const UpwardTable& mat_up_queuedepth,
                                      const UpwardTable& mat_up_linkutil, FlowletTable& flowlets,
                                      const std::vector<Color>& port_utilizations, SimTime now,
                                      uint64_t hash_salt) {
    uint64_t h = five_tuple_hash(pkt.five_tuple(), hash_salt);
    auto touch = flowlets.touch(h, now);

    UpwardSelectResult r;
    r.stamp = touch.stamp;
    if (!touch.new_flowlet && touch.port >= 0) {
        r.port = touch.port;
        return r;
    }

    r.new_flowlet = true;
    int low_depth_port = mat_up_queuedepth.select(h);
    int low_util_port = mat_up_linkutil.select(h);
    if (pkt.traffic_class == TrafficClass::SHORT) {
        Color status = port_utilizations[low_depth_port];
        r.port = status == Color::GREEN ? low_depth_port : low_util_port;
    } else {
        Color status = port_utilizations[low_util_port];
        r.port = status == Color::GREEN ? low_util_port : low_depth_port;
    }
    flowlets.commit_port(touch.slot, r.port);
    return r;
}

}  // namespace p4te
