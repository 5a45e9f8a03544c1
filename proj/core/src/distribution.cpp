#include "p4te/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "p4te/topology.hpp"

namespace p4te {

FlowSizeDistribution FlowSizeDistribution::from_points(
    std::string name, std::vector<std::pair<int64_t, double>> points) {
    FlowSizeDistribution d;
    d.name_ = std::move(name);
    d.points_ = std::move(points);
    d.validate();
    return d;
}

FlowSizeDistribution FlowSizeDistribution::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open distribution file: " + path);
    std::vector<std::pair<int64_t, double>> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int64_t size;
        double prob;
        if (!(ls >> size)) continue;  // blank line
        if (!(ls >> prob)) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'size prob'");
        }
        pts.emplace_back(size, prob);
    }
    return from_points(path, std::move(pts));
}

void FlowSizeDistribution::validate() const {
    if (points_.size() < 2) throw ConfigError(name_ + ": need at least two CDF points");
    for (size_t i = 0; i < points_.size(); ++i) {
        auto [s, p] = points_[i];
        if (s <= 0 || p <= 0.0 || p > 1.0) {
            throw ConfigError(name_ + ": CDF point out of range");
        }
        if (i > 0 && (s <= points_[i - 1].first || p < points_[i - 1].second)) {
            throw ConfigError(name_ + ": CDF must be ascending");
        }
    }
    if (points_.back().second != 1.0) throw ConfigError(name_ + ": CDF must end at 1.0");
}

double FlowSizeDistribution::cdf(double size_bytes) const {
    if (size_bytes < static_cast<double>(points_.front().first)) return 0.0;
    for (size_t i = 1; i < points_.size(); ++i) {
        auto [s1, p1] = points_[i];
        if (size_bytes < static_cast<double>(s1)) {
            auto [s0, p0] = points_[i - 1];
            double frac = (size_bytes - static_cast<double>(s0)) / static_cast<double>(s1 - s0);
            return p0 + frac * (p1 - p0);
        }
    }
    return 1.0;
}

int64_t FlowSizeDistribution::quantile(double u) const {
    auto [s0, p0] = points_.front();
    if (u <= p0) return s0;  // point mass
    for (size_t i = 1; i < points_.size(); ++i) {
        auto [s1, p1] = points_[i];
        if (u <= p1) {
            auto [sa, pa] = points_[i - 1];
            double frac = (u - pa) / (p1 - pa);
            return sa + static_cast<int64_t>(std::llround(frac * static_cast<double>(s1 - sa)));
        }
    }
    return points_.back().first;
}

double FlowSizeDistribution::mean_bytes() const {
    double mean = static_cast<double>(points_.front().first) * points_.front().second;
    for (size_t i = 1; i < points_.size(); ++i) {
        auto [s1, p1] = points_[i];
        auto [s0, p0] = points_[i - 1];
        mean += (p1 - p0) * 0.5 * static_cast<double>(s0 + s1);
    }
    return mean;
}

FlowSizeDistribution web_search_distribution() {
    return FlowSizeDistribution::from_points("web_search", {
                                                               {10000, 0.10},
                                                               {20000, 0.30},
                                                               {30000, 0.50},
                                                               {50000, 0.70},
                                                               {80000, 0.80},
                                                               {200000, 0.90},
                                                               {1500000, 0.95},
                                                               {10000000, 0.99},
                                                               {30000000, 1.00},
                                                           });
}

FlowSizeDistribution data_mining_distribution() {
    return FlowSizeDistribution::from_points("data_mining", {
                                                                {3000, 0.30},
                                                                {6000, 0.50},
                                                                {10000, 0.70},
                                                                {40000, 0.80},
                                                                {120000, 0.90},
                                                                {2000000, 0.95},
                                                                {20000000, 0.99},
                                                                {50000000, 1.00},
                                                            });
}

}  // namespace p4te
