#include "p4te/workload.hpp"

#include <algorithm>
#include <cmath>

#include "p4te/rng.hpp"

namespace p4te {

namespace {

int64_t quantized(int64_t bytes, int64_t mss, bool enabled) {
    if (!enabled) return bytes;
    int64_t pkts = std::max<int64_t>(1, (bytes + mss - 1) / mss);
    return pkts * mss;
}

}  // namespace

int stride_destination(const Topology& topo, int src_host, int offset) {
    int leaf = topo.host_leaf(src_host);
    int idx = topo.host_idx(src_host);
    int dst_leaf = (leaf + offset) % topo.n_leaf;
    int dst_idx = (idx + offset) % topo.hosts_per_leaf;
    return topo.host_of(dst_leaf, dst_idx);
}

std::vector<FlowSpec> gen_empirical(const FlowSizeDistribution& dist, const EmpiricalParams& p,
                                    const Topology& topo, uint64_t seed) {
    if (p.load <= 0.0 || p.load > 1.0) throw ConfigError("load must be in (0, 1]");
    if (stride_destination(topo, 0, p.stride_offset) == 0) {
        throw ConfigError("stride offset maps a host onto itself");
    }

    double mean_pkts = dist.mean_bytes() / static_cast<double>(p.mss_bytes);
    // per-leaf aggregation capacity, in packets per second
    double leaf_core_pps = static_cast<double>(topo.n_spine * topo.core_bw_pps);
    double lambda_leaf = p.load * leaf_core_pps / mean_pkts;  // flows per second per leaf
    int64_t p90 = dist.p90();

    std::vector<FlowSpec> flows;
    uint32_t label = 0;
    for (int leaf = 0; leaf < topo.n_leaf; ++leaf) {
        Rng rng(splitmix64(seed + 0x9000) ^ splitmix64(static_cast<uint64_t>(leaf) + 1));
        double t = 0.0;
        while (true) {
            t += rng.next_exp(lambda_leaf);
            SimTime at = static_cast<SimTime>(std::llround(t * 1e9));
            if (at >= p.duration) break;
            int src = topo.host_of(leaf, static_cast<int>(rng.next_below(topo.hosts_per_leaf)));
            int64_t raw = dist.quantile(rng.next_double());
            FlowSpec f;
            f.src_host = src;
            f.dst_host = stride_destination(topo, src, p.stride_offset);
            f.cls = raw > p90 ? TrafficClass::LARGE : TrafficClass::SHORT;
            f.size_bytes = quantized(raw, p.mss_bytes, p.quantize_to_mss);
            f.start = at;
            flows.push_back(f);
        }
    }
    std::sort(flows.begin(), flows.end(), [](const FlowSpec& a, const FlowSpec& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.src_host < b.src_host;
    });
    for (auto& f : flows) f.label = label++;
    return flows;
}

std::vector<FlowSpec> gen_incast(const Topology& topo, uint64_t seed, int64_t mss_bytes,
                                 bool quantize_to_mss) {
    (void)seed;  // the scenario itself is fixed; seeds vary hashing per run
    constexpr int kSources = 12;
    constexpr int kShort = 24;
    constexpr int kLarge = 8;

    int victim = 0;
    int victim_leaf = topo.host_leaf(victim);
    std::vector<int> sources;
    for (int h = 0; h < topo.host_count() && static_cast<int>(sources.size()) < kSources; ++h) {
        if (topo.host_leaf(h) != victim_leaf) sources.push_back(h);
    }
    if (static_cast<int>(sources.size()) < kSources || topo.n_leaf < 3) {
        throw ConfigError("incast needs 12 hosts spread over at least two non-victim leaves");
    }
    // victim's access link must be the unique bottleneck
    if (static_cast<int64_t>(sources.size()) * topo.edge_bw_pps <= topo.edge_bw_pps) {
        throw ConfigError("incast sources cannot saturate the victim link");
    }

    std::vector<FlowSpec> flows;
    uint32_t label = 0;
    for (int i = 0; i < kShort; ++i) {
        FlowSpec f;
        f.src_host = sources[i % kSources];
        f.dst_host = victim;
        f.size_bytes = quantized(512 * 1024, mss_bytes, quantize_to_mss);
        f.cls = TrafficClass::SHORT;
        f.start = 0;
        f.label = label++;
        flows.push_back(f);
    }
    for (int i = 0; i < kLarge; ++i) {
        FlowSpec f;
        f.src_host = sources[i % kSources];
        f.dst_host = victim;
        f.size_bytes = quantized(1024 * 1024, mss_bytes, quantize_to_mss);
        f.cls = TrafficClass::LARGE;
        f.start = 0;
        f.label = label++;
        flows.push_back(f);
    }
    return flows;
}

}  // namespace p4te
