#pragma once

#include <cstdint>
#include <vector>

#include "p4te/distribution.hpp"
#include "p4te/packet.hpp"
#include "p4te/time.hpp"
#include "p4te/topology.hpp"

namespace p4te {

struct FlowSpec {
    int src_host = 0;
    int dst_host = 0;
    int64_t size_bytes = 0;
    TrafficClass cls = TrafficClass::SHORT;
    SimTime start = 0;
    uint32_t label = 0;
};

struct EmpiricalParams {
    double load = 0.5;  // fraction of per-leaf aggregation capacity
    SimTime duration = from_sec(500);
    int stride_offset = 1;
    int64_t mss_bytes = 1460;
    bool quantize_to_mss = true;  // pps mode rounds sizes to whole packets
};

// Poisson arrivals per leaf at rate load * (n_spine * core_bw) / mean size,
// sizes by inverse-CDF sampling, destinations by the stride pattern, class
// tagged LARGE above the distribution's 90th percentile.
std::vector<FlowSpec> gen_empirical(const FlowSizeDistribution& dist, const EmpiricalParams& p,
                                    const Topology& topo, uint64_t seed);

// 24 short (512 KB) + 8 large (1024 KB) flows from 12 hosts on other
// leaves, all to one victim host, synchronized start.
std::vector<FlowSpec> gen_incast(const Topology& topo, uint64_t seed, int64_t mss_bytes = 1460,
                                 bool quantize_to_mss = true);

int stride_destination(const Topology& topo, int src_host, int offset);

}  // namespace p4te
