#pragma once

#include <map>
#include <string>
#include <vector>

#include "p4te/simulation.hpp"

namespace p4te {

// Flat key = value config with [section] headers; keys are addressed as
// "section.key". Parse errors carry file:line.
class IniFile {
  public:
    static IniFile parse_file(const std::string& path);
    static IniFile parse_string(const std::string& text, const std::string& name = "<string>");

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get(const std::string& key, const std::string& dflt) const;
    int64_t get_i64(const std::string& key, int64_t dflt) const;
    double get_f(const std::string& key, double dflt) const;
    bool get_b(const std::string& key, bool dflt) const;
    std::vector<double> get_f_list(const std::string& key, std::vector<double> dflt) const;
    std::vector<uint64_t> get_u64_list(const std::string& key, std::vector<uint64_t> dflt) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    [[noreturn]] void bad(const std::string& key, const std::string& why) const;
    std::string name_;
    std::map<std::string, std::string> kv_;
    std::map<std::string, int> line_;
};

struct ExperimentConfig {
    // experiment
    std::string scheme = "p4te";
    std::string workload = "web_search";  // web_search | data_mining | incast
    std::vector<double> loads{0.6};
    std::vector<uint64_t> seeds{1};
    double duration_s = 500.0;
    std::string out_dir = "out";

    // topology
    int n_leaf = 4, n_spine = 4, hosts_per_leaf = 4;
    int64_t edge_bw_pps = 40, core_bw_pps = 20;
    int max_ports = 8;
    double queue_cap_factor = 0.2;
    int64_t host_prop_ns = 1000, core_prop_ns = 1000;
    int64_t port_latency_ns = 652, recirc_delay_ns = 75;
    int small_pkt_cost = 44, probe_cost = 44;
    bool byte_mode = false;

    // monitoring
    int delta = 2, depth_groups = 4;
    double cir_frac = 0.90, pir_frac = 1.00, burst_frac = 0.05;
    double safe_short_frac = 0.90, safe_large_frac = 0.10, srtcm_burst_frac = 0.05;

    // path control
    int64_t flowlet_gap_ms = 40;
    int64_t flowlet_slots = 1 << 16;
    int64_t control_delay_ns = 10000;

    // rate adaptation
    int64_t rate_window_bytes = 0;  // 0 -> derived
    int64_t mean_rtt_ms = 70;

    // transport
    int64_t mss_bytes = 1460;
    int init_cwnd_pkts = 2;
    int max_cwnd_bdp_mult = 4;
    int64_t rto_ms = 200, rto_max_ms = 2000;

    // baselines
    int ecn_threshold = 6;
    int64_t hula_probe_interval_ms = 70;

    // workload
    std::string web_search_file;  // empty -> built-in table
    std::string data_mining_file;
    int stride_offset = 1;

    static ExperimentConfig from_ini(const IniFile& ini);
    void validate() const;

    Topology make_topology() const;
    SimParams make_sim_params(Scheme scheme, uint64_t seed) const;
    FlowSizeDistribution distribution(const std::string& workload_name) const;
    std::vector<FlowSpec> make_flows(const std::string& workload_name, double load,
                                     uint64_t seed) const;
};

}  // namespace p4te
