#include "p4te/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace p4te {

namespace {

bool in_class(const FlowCompletionRecord& f, std::optional<TrafficClass> cls) {
    return !cls || f.cls == *cls;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

double RunReport::mean_fct_s(std::optional<TrafficClass> cls) const {
    double sum = 0;
    size_t n = 0;
    for (const auto& f : flows) {
        if (in_class(f, cls)) {
            sum += to_sec(f.end - f.start);
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

uint64_t RunReport::retrans_total(std::optional<TrafficClass> cls) const {
    uint64_t sum = 0;
    for (const auto& f : flows) {
        if (in_class(f, cls)) sum += f.retransmissions;
    }
    return sum;
}

uint64_t RunReport::fack_total() const {
    uint64_t sum = 0;
    for (const auto& f : flows) sum += f.facks_received;
    return sum;
}

size_t RunReport::flow_count(std::optional<TrafficClass> cls) const {
    size_t n = 0;
    for (const auto& f : flows) {
        if (in_class(f, cls)) ++n;
    }
    return n;
}

std::vector<CdfPoint> fct_cdf(const std::vector<FlowCompletionRecord>& records,
                              std::optional<TrafficClass> cls, int percent_step) {
    std::vector<SimTime> fcts;
    for (const auto& f : records) {
        if (in_class(f, cls)) fcts.push_back(f.end - f.start);
    }
    std::vector<CdfPoint> out;
    if (fcts.empty()) return out;
    std::sort(fcts.begin(), fcts.end());
    size_t n = fcts.size();
    for (int q = percent_step; q <= 100; q += percent_step) {
        size_t rank = (static_cast<size_t>(q) * n + 99) / 100;  // ceil(q/100 * n)
        if (rank == 0) rank = 1;
        out.push_back({fcts[rank - 1], static_cast<double>(q) / 100.0});
    }
    out.back() = {fcts[n - 1], 1.0};
    return out;
}

double population_stddev(const std::vector<uint64_t>& counts) {
    if (counts.empty()) return 0.0;
    double mean = 0;
    for (uint64_t c : counts) mean += static_cast<double>(c);
    mean /= static_cast<double>(counts.size());
    double var = 0;
    for (uint64_t c : counts) {
        double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(counts.size()));
}

std::string flows_csv(const RunReport& r) {
    std::string out = "flow_id,class,size_bytes,start_ns,end_ns,fct_ns,retransmissions,facks\n";
    for (const auto& f : r.flows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%llu,%s,%lld,%lld,%lld,%lld,%llu,%llu\n",
                      (unsigned long long)f.flow_id, f.cls == TrafficClass::SHORT ? "short" : "large",
                      (long long)f.size_bytes, (long long)f.start, (long long)f.end,
                      (long long)(f.end - f.start), (unsigned long long)f.retransmissions,
                      (unsigned long long)f.facks_received);
        out += buf;
    }
    return out;
}

std::string links_csv(const RunReport& r) {
    std::string out = "node,port,dir,enq,deq,drop,bytes,data_enq\n";
    for (const auto& l : r.links) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%s,%llu,%llu,%llu,%llu,%llu\n", l.node.c_str(),
                      l.port, l.dir.c_str(), (unsigned long long)l.enq, (unsigned long long)l.deq,
                      (unsigned long long)l.drop, (unsigned long long)l.bytes,
                      (unsigned long long)l.data_enq);
        out += buf;
    }
    return out;
}

std::string cdf_csv(const RunReport& r, int percent_step) {
    std::string out = "class,fct_ns,cum_frac\n";
    auto emit = [&](const char* name, std::optional<TrafficClass> cls) {
        for (const auto& p : fct_cdf(r.flows, cls, percent_step)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s,%lld,%s\n", name, (long long)p.fct,
                          fmt(p.frac).c_str());
            out += buf;
        }
    };
    emit("short", TrafficClass::SHORT);
    emit("large", TrafficClass::LARGE);
    emit("all", std::nullopt);
    return out;
}

std::string summary_json(const RunReport& r) {
    nlohmann::json j;
    j["scheme"] = r.scheme;
    j["workload"] = r.workload;
    j["load"] = r.load;
    j["seed"] = r.seed;
    j["rate_window_bytes"] = r.rate_window_bytes;
    j["sim_end_ns"] = r.sim_end;
    j["flows"] = r.flow_count();
    j["flows_short"] = r.flow_count(TrafficClass::SHORT);
    j["flows_large"] = r.flow_count(TrafficClass::LARGE);
    j["mean_fct_s"] = r.mean_fct_s();
    j["mean_fct_short_s"] = r.mean_fct_s(TrafficClass::SHORT);
    j["mean_fct_large_s"] = r.mean_fct_s(TrafficClass::LARGE);
    j["retrans_total"] = r.retrans_total();
    j["retrans_short"] = r.retrans_total(TrafficClass::SHORT);
    j["retrans_large"] = r.retrans_total(TrafficClass::LARGE);
    j["facks_received"] = r.fack_total();
    j["upward_stddev_per_leaf"] = r.upward_stddev;
    j["counters"] = {{"injected", r.injected},   {"delivered", r.delivered},
                     {"dropped", r.dropped},     {"facks_generated", r.facks},
                     {"feedbacks", r.feedbacks}, {"recirculations", r.recircs},
                     {"probes", r.probes}};
    j["checks"] = {{"reorder_violations", r.reorder_violations},
                   {"hula_fallbacks", r.hula_fallbacks},
                   {"cp_events_dropped", r.cp_events_dropped},
                   {"spine_upward_selects", r.spine_upward_selects},
                   {"unknown_flow_acks", r.unknown_flow_acks},
                   {"invariants_ok", r.invariants_ok}};
    j["invariant_failures"] = r.invariant_failures;
    return j.dump(2) + "\n";
}

AggregateReport aggregate(const std::vector<RunReport>& runs) {
    if (runs.empty()) throw std::runtime_error("aggregate needs at least one run");
    AggregateReport a;
    a.scheme = runs.front().scheme;
    a.workload = runs.front().workload;
    a.load = runs.front().load;
    a.runs = static_cast<int>(runs.size());
    size_t leaves = runs.front().upward_stddev.size();
    a.mean_upward_stddev.assign(leaves, 0.0);
    for (const auto& r : runs) {
        a.mean_fct_short_s += r.mean_fct_s(TrafficClass::SHORT);
        a.mean_fct_large_s += r.mean_fct_s(TrafficClass::LARGE);
        a.mean_fct_all_s += r.mean_fct_s();
        a.mean_retrans_total += static_cast<double>(r.retrans_total());
        a.mean_retrans_short += static_cast<double>(r.retrans_total(TrafficClass::SHORT));
        a.mean_retrans_large += static_cast<double>(r.retrans_total(TrafficClass::LARGE));
        a.mean_facks += static_cast<double>(r.fack_total());
        for (size_t i = 0; i < leaves && i < r.upward_stddev.size(); ++i) {
            a.mean_upward_stddev[i] += r.upward_stddev[i];
        }
    }
    double n = static_cast<double>(a.runs);
    a.mean_fct_short_s /= n;
    a.mean_fct_large_s /= n;
    a.mean_fct_all_s /= n;
    a.mean_retrans_total /= n;
    a.mean_retrans_short /= n;
    a.mean_retrans_large /= n;
    a.mean_facks /= n;
    for (auto& v : a.mean_upward_stddev) v /= n;
    return a;
}

std::string aggregate_json(const AggregateReport& a) {
    nlohmann::json j;
    j["scheme"] = a.scheme;
    j["workload"] = a.workload;
    j["load"] = a.load;
    j["runs"] = a.runs;
    j["mean_fct_short_s"] = a.mean_fct_short_s;
    j["mean_fct_large_s"] = a.mean_fct_large_s;
    j["mean_fct_all_s"] = a.mean_fct_all_s;
    j["mean_retrans_total"] = a.mean_retrans_total;
    j["mean_retrans_short"] = a.mean_retrans_short;
    j["mean_retrans_large"] = a.mean_retrans_large;
    j["mean_facks"] = a.mean_facks;
    j["mean_upward_stddev_per_leaf"] = a.mean_upward_stddev;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace p4te
