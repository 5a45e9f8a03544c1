#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace p4te {

// Empirical flow-size distribution as a piecewise-linear CDF. The first
// point is a point mass (u <= p0 yields s0); later segments interpolate.
// File format: one "size_bytes cumulative_prob" pair per line, ascending,
// '#' comments allowed, last probability 1.0.
class FlowSizeDistribution {
  public:
    static FlowSizeDistribution from_points(std::string name,
                                            std::vector<std::pair<int64_t, double>> points);
    static FlowSizeDistribution load_file(const std::string& path);

    const std::string& name() const { return name_; }
    const std::vector<std::pair<int64_t, double>>& points() const { return points_; }

    double cdf(double size_bytes) const;
    int64_t quantile(double u) const;  // inverse CDF
    double mean_bytes() const;
    int64_t p90() const { return quantile(0.9); }
    int64_t p80() const { return quantile(0.8); }

  private:
    void validate() const;
    std::string name_;
    std::vector<std::pair<int64_t, double>> points_;
};

// Shipped approximations of the two production workloads, also written out
// as data files under data/.
FlowSizeDistribution web_search_distribution();
FlowSizeDistribution data_mining_distribution();

}  // namespace p4te
