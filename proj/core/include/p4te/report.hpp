#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p4te/packet.hpp"
#include "p4te/time.hpp"
#include "p4te/transport.hpp"

namespace p4te {

struct LinkRow {
    std::string node;  // L<i>, S<i>, H<i>
    int port = 0;
    std::string dir;  // up | down | host
    uint64_t enq = 0, deq = 0, drop = 0, bytes = 0, data_enq = 0;
};

struct RunReport {
    std::string scheme;
    std::string workload;
    double load = 0.0;
    uint64_t seed = 0;
    int64_t rate_window_bytes = 0;
    SimTime sim_end = 0;

    std::vector<FlowCompletionRecord> flows;
    std::vector<LinkRow> links;
    std::vector<double> upward_stddev;  // per leaf, population stddev of tx packets

    uint64_t injected = 0, delivered = 0, dropped = 0;
    uint64_t facks = 0, feedbacks = 0, recircs = 0, probes = 0;
    uint64_t reorder_violations = 0;
    uint64_t hula_fallbacks = 0;
    uint64_t cp_events_dropped = 0;
    uint64_t spine_upward_selects = 0;
    uint64_t unknown_flow_acks = 0;

    bool invariants_ok = true;
    std::vector<std::string> invariant_failures;

    double mean_fct_s(std::optional<TrafficClass> cls = std::nullopt) const;
    uint64_t retrans_total(std::optional<TrafficClass> cls = std::nullopt) const;
    uint64_t fack_total() const;
    size_t flow_count(std::optional<TrafficClass> cls = std::nullopt) const;
};

struct CdfPoint {
    SimTime fct;
    double frac;
};

// Nearest-rank quantiles at the given percent granularity; the last point
// is always (max fct, 1.0).
std::vector<CdfPoint> fct_cdf(const std::vector<FlowCompletionRecord>& records,
                              std::optional<TrafficClass> cls, int percent_step = 1);

double population_stddev(const std::vector<uint64_t>& counts);

std::string flows_csv(const RunReport& r);
std::string links_csv(const RunReport& r);
std::string cdf_csv(const RunReport& r, int percent_step = 1);
std::string summary_json(const RunReport& r);

struct AggregateReport {
    std::string scheme;
    std::string workload;
    double load = 0.0;
    int runs = 0;
    double mean_fct_short_s = 0, mean_fct_large_s = 0, mean_fct_all_s = 0;
    double mean_retrans_total = 0, mean_retrans_short = 0, mean_retrans_large = 0;
    double mean_facks = 0;
    std::vector<double> mean_upward_stddev;  // per leaf
};

AggregateReport aggregate(const std::vector<RunReport>& runs);
std::string aggregate_json(const AggregateReport& a);

void write_file(const std::string& path, const std::string& content);

}  // namespace p4te
