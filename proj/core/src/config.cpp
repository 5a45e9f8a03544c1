#include "p4te/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace p4te {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

IniFile IniFile::parse_string(const std::string& text, const std::string& name) {
    IniFile f;
    f.name_ = name;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cmt = line.find_first_of("#;");
        if (cmt != std::string::npos) line.erase(cmt);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(name + ":" + std::to_string(lineno) + ": unterminated section");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(name + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(name + ":" + std::to_string(lineno) + ": empty key");
        }
        std::string full = section.empty() ? key : section + "." + key;
        f.kv_[full] = value;
        f.line_[full] = lineno;
    }
    return f;
}

void IniFile::bad(const std::string& key, const std::string& why) const {
    auto it = line_.find(key);
    std::string where = name_;
    if (it != line_.end()) where += ":" + std::to_string(it->second);
    throw ConfigError(where + ": key '" + key + "' " + why);
}

std::string IniFile::get(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

int64_t IniFile::get_i64(const std::string& key, int64_t dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
        size_t pos = 0;
        int64_t v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) bad(key, "is not an integer: '" + it->second + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad(key, "is not an integer: '" + it->second + "'");
    }
}

double IniFile::get_f(const std::string& key, double dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
        size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) bad(key, "is not a number: '" + it->second + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad(key, "is not a number: '" + it->second + "'");
    }
}

bool IniFile::get_b(const std::string& key, bool dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad(key, "is not a boolean: '" + it->second + "'");
}

std::vector<double> IniFile::get_f_list(const std::string& key, std::vector<double> dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::vector<double> out;
    for (const auto& tok : split_list(it->second)) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            bad(key, "has a non-numeric element: '" + tok + "'");
        }
    }
    if (out.empty()) bad(key, "is an empty list");
    return out;
}

std::vector<uint64_t> IniFile::get_u64_list(const std::string& key,
                                            std::vector<uint64_t> dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    std::vector<uint64_t> out;
    for (const auto& tok : split_list(it->second)) {
        try {
            out.push_back(std::stoull(tok));
        } catch (...) {
            bad(key, "has a non-integer element: '" + tok + "'");
        }
    }
    if (out.empty()) bad(key, "is an empty list");
    return out;
}

ExperimentConfig ExperimentConfig::from_ini(const IniFile& ini) {
    ExperimentConfig c;
    c.scheme = ini.get("experiment.scheme", c.scheme);
    c.workload = ini.get("experiment.workload", c.workload);
    c.loads = ini.get_f_list("experiment.loads", c.loads);
    c.seeds = ini.get_u64_list("experiment.seeds", c.seeds);
    c.duration_s = ini.get_f("experiment.duration_s", c.duration_s);
    c.out_dir = ini.get("experiment.out_dir", c.out_dir);

    c.n_leaf = static_cast<int>(ini.get_i64("topology.leaf_count", c.n_leaf));
    c.n_spine = static_cast<int>(ini.get_i64("topology.spine_count", c.n_spine));
    c.hosts_per_leaf = static_cast<int>(ini.get_i64("topology.hosts_per_leaf", c.hosts_per_leaf));
    c.edge_bw_pps = ini.get_i64("topology.edge_bw_pps", c.edge_bw_pps);
    c.core_bw_pps = ini.get_i64("topology.core_bw_pps", c.core_bw_pps);
    c.max_ports = static_cast<int>(ini.get_i64("topology.max_ports", c.max_ports));
    c.queue_cap_factor = ini.get_f("topology.queue_cap_factor", c.queue_cap_factor);
    c.host_prop_ns = ini.get_i64("topology.host_prop_ns", c.host_prop_ns);
    c.core_prop_ns = ini.get_i64("topology.core_prop_ns", c.core_prop_ns);
    c.port_latency_ns = ini.get_i64("topology.port_latency_ns", c.port_latency_ns);
    c.recirc_delay_ns = ini.get_i64("topology.recirc_delay_ns", c.recirc_delay_ns);
    c.small_pkt_cost = static_cast<int>(ini.get_i64("topology.small_pkt_cost", c.small_pkt_cost));
    c.probe_cost = static_cast<int>(ini.get_i64("topology.probe_cost", c.probe_cost));
    c.byte_mode = ini.get_b("topology.byte_mode", c.byte_mode);

    c.delta = static_cast<int>(ini.get_i64("monitor.delta", c.delta));
    c.depth_groups = static_cast<int>(ini.get_i64("monitor.depth_groups", c.depth_groups));
    c.cir_frac = ini.get_f("monitor.cir_frac", c.cir_frac);
    c.pir_frac = ini.get_f("monitor.pir_frac", c.pir_frac);
    c.burst_frac = ini.get_f("monitor.burst_frac", c.burst_frac);
    c.safe_short_frac = ini.get_f("monitor.safe_short_frac", c.safe_short_frac);
    c.safe_large_frac = ini.get_f("monitor.safe_large_frac", c.safe_large_frac);
    c.srtcm_burst_frac = ini.get_f("monitor.srtcm_burst_frac", c.srtcm_burst_frac);

    c.flowlet_gap_ms = ini.get_i64("pathsel.flowlet_gap_ms", c.flowlet_gap_ms);
    c.flowlet_slots = ini.get_i64("pathsel.flowlet_slots", c.flowlet_slots);
    c.control_delay_ns = ini.get_i64("pathsel.control_delay_ns", c.control_delay_ns);

    c.rate_window_bytes = ini.get_i64("rate_adapt.window_bytes", c.rate_window_bytes);
    c.mean_rtt_ms = ini.get_i64("rate_adapt.mean_rtt_ms", c.mean_rtt_ms);

    c.mss_bytes = ini.get_i64("transport.mss_bytes", c.mss_bytes);
    c.init_cwnd_pkts = static_cast<int>(ini.get_i64("transport.init_cwnd_pkts", c.init_cwnd_pkts));
    c.max_cwnd_bdp_mult =
        static_cast<int>(ini.get_i64("transport.max_cwnd_bdp_mult", c.max_cwnd_bdp_mult));
    c.rto_ms = ini.get_i64("transport.rto_ms", c.rto_ms);
    c.rto_max_ms = ini.get_i64("transport.rto_max_ms", c.rto_max_ms);

    c.ecn_threshold = static_cast<int>(ini.get_i64("baseline.ecn_threshold", c.ecn_threshold));
    c.hula_probe_interval_ms =
        ini.get_i64("baseline.hula_probe_interval_ms", c.hula_probe_interval_ms);

    c.web_search_file = ini.get("workload.web_search_file", c.web_search_file);
    c.data_mining_file = ini.get("workload.data_mining_file", c.data_mining_file);
    c.stride_offset = static_cast<int>(ini.get_i64("workload.stride_offset", c.stride_offset));
    return c;
}

void ExperimentConfig::validate() const {
    scheme_from_string(scheme);
    if (workload != "web_search" && workload != "data_mining" && workload != "incast") {
        throw ConfigError("unknown workload '" + workload + "'");
    }
    for (double l : loads) {
        if (l <= 0.0 || l > 1.0) throw ConfigError("load must be in (0, 1]");
    }
    if (seeds.empty()) throw ConfigError("need at least one seed");
    if (duration_s <= 0) throw ConfigError("duration_s must be positive");
    auto frac = [](double v, const char* name) {
        if (v <= 0.0 || v > 1.0) throw ConfigError(std::string(name) + " must be in (0, 1]");
    };
    frac(cir_frac, "monitor.cir_frac");
    frac(pir_frac, "monitor.pir_frac");
    frac(burst_frac, "monitor.burst_frac");
    frac(safe_short_frac, "monitor.safe_short_frac");
    frac(safe_large_frac, "monitor.safe_large_frac");
    frac(srtcm_burst_frac, "monitor.srtcm_burst_frac");
    if (pir_frac < cir_frac) throw ConfigError("monitor.pir_frac must be >= cir_frac");
    if (safe_short_frac + safe_large_frac > 1.0 + 1e-9) {
        throw ConfigError("class safe-rates must sum to <= 1");
    }
    if (delta < 1) throw ConfigError("monitor.delta must be >= 1");
    if (depth_groups < 2) throw ConfigError("monitor.depth_groups must be >= 2");
    if (flowlet_slots <= 0 || (flowlet_slots & (flowlet_slots - 1)) != 0) {
        throw ConfigError("pathsel.flowlet_slots must be a power of two");
    }
    if (mss_bytes < 1 || init_cwnd_pkts < 1 || max_cwnd_bdp_mult < 1) {
        throw ConfigError("transport parameters must be >= 1");
    }
    make_topology();  // validates counts and port budget
    if (!web_search_file.empty()) FlowSizeDistribution::load_file(web_search_file);
    if (!data_mining_file.empty()) FlowSizeDistribution::load_file(data_mining_file);
}

Topology ExperimentConfig::make_topology() const {
    return build_leaf_spine(n_leaf, n_spine, hosts_per_leaf, edge_bw_pps, core_bw_pps, max_ports);
}

SimParams ExperimentConfig::make_sim_params(Scheme sch, uint64_t seed) const {
    SimParams sp;
    sp.topo = make_topology();
    sp.scheme = sch;
    sp.seed = seed;
    sp.duration = static_cast<SimTime>(std::llround(duration_s * 1e9));
    sp.host_prop = host_prop_ns;
    sp.core_prop = core_prop_ns;
    sp.queue_cap_factor = queue_cap_factor;
    sp.port_latency = port_latency_ns;
    sp.recirc_delay = recirc_delay_ns;
    sp.small_pkt_cost = small_pkt_cost;
    sp.probe_cost = probe_cost;
    sp.byte_mode = byte_mode;
    sp.delta = delta;
    sp.depth_groups = depth_groups;
    sp.cir_frac = cir_frac;
    sp.pir_frac = pir_frac;
    sp.burst_frac = burst_frac;
    sp.safe_short_frac = safe_short_frac;
    sp.safe_large_frac = safe_large_frac;
    sp.srtcm_burst_frac = srtcm_burst_frac;
    sp.flowlet_slots = static_cast<size_t>(flowlet_slots);
    sp.flowlet_gap = from_ms(flowlet_gap_ms);
    sp.control_delay = control_delay_ns;
    sp.rate_window_bytes = rate_window_bytes;
    sp.mean_rtt = from_ms(mean_rtt_ms);
    sp.ecn_threshold = ecn_threshold;
    sp.probe_interval = from_ms(hula_probe_interval_ms);

    sp.transport.mss_bytes = mss_bytes;
    sp.transport.init_cwnd_bytes = static_cast<int64_t>(init_cwnd_pkts) * mss_bytes;
    int64_t bottleneck = std::min(edge_bw_pps, core_bw_pps);
    double bdp_pkts = (static_cast<double>(mean_rtt_ms) / 1000.0) * static_cast<double>(bottleneck);
    int64_t max_pkts = std::max<int64_t>(
        init_cwnd_pkts, static_cast<int64_t>(std::ceil(bdp_pkts * max_cwnd_bdp_mult)));
    sp.transport.max_cwnd_bytes = max_pkts * mss_bytes;
    sp.transport.rto = from_ms(rto_ms);
    sp.transport.rto_max = from_ms(rto_max_ms);
    return sp;
}

FlowSizeDistribution ExperimentConfig::distribution(const std::string& workload_name) const {
    if (workload_name == "web_search") {
        return web_search_file.empty() ? web_search_distribution()
                                       : FlowSizeDistribution::load_file(web_search_file);
    }
    if (workload_name == "data_mining") {
        return data_mining_file.empty() ? data_mining_distribution()
                                        : FlowSizeDistribution::load_file(data_mining_file);
    }
    throw ConfigError("workload '" + workload_name + "' has no size distribution");
}

std::vector<FlowSpec> ExperimentConfig::make_flows(const std::string& workload_name, double load,
                                                   uint64_t seed) const {
    Topology topo = make_topology();
    if (workload_name == "incast") {
        return gen_incast(topo, seed, mss_bytes, !byte_mode);
    }
    EmpiricalParams ep;
    ep.load = load;
    ep.duration = static_cast<SimTime>(std::llround(duration_s * 1e9));
    ep.stride_offset = stride_offset;
    ep.mss_bytes = mss_bytes;
    ep.quantize_to_mss = !byte_mode;
    return gen_empirical(distribution(workload_name), ep, topo, seed);
}

}  // namespace p4te
