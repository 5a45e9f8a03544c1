#include "p4te/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <map>

#include "json.hpp"

namespace p4te {

namespace fs = std::filesystem;

RunReport run_cell(const ExperimentConfig& cfg, Scheme scheme, const std::string& workload,
                   double load, uint64_t seed) {
    SimParams sp = cfg.make_sim_params(scheme, seed);
    auto flows = cfg.make_flows(workload, load, seed);
    Simulation sim(std::move(sp));
    sim.add_flows(flows);
    RunReport r = sim.run();
    r.workload = workload;
    r.load = workload == "incast" ? 0.0 : load;
    return r;
}

std::string cell_dir_name(const std::string& scheme, const std::string& workload, double load,
                          uint64_t seed) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_%s_load%02d_seed%llu", scheme.c_str(), workload.c_str(),
                  static_cast<int>(std::lround(load * 100)), (unsigned long long)seed);
    return buf;
}

void write_cell_outputs(const std::string& out_dir, const RunReport& r) {
    fs::path dir = fs::path(out_dir) / cell_dir_name(r.scheme, r.workload, r.load, r.seed);
    fs::create_directories(dir);
    write_file((dir / "flows.csv").string(), flows_csv(r));
    write_file((dir / "links.csv").string(), links_csv(r));
    write_file((dir / "fct_cdf.csv").string(), cdf_csv(r));
    write_file((dir / "summary.json").string(), summary_json(r));
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, int parallelism) {
    cfg.validate();
    Scheme scheme = scheme_from_string(cfg.scheme);
    std::vector<double> loads = cfg.workload == "incast" ? std::vector<double>{0.0} : cfg.loads;

    struct Cell {
        double load;
        uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double load : loads) {
        for (uint64_t seed : cfg.seeds) cells.push_back({load, seed});
    }

    std::vector<RunReport> reports(cells.size());
    int par = std::max(1, parallelism);
    for (size_t base = 0; base < cells.size(); base += static_cast<size_t>(par)) {
        std::vector<std::future<RunReport>> batch;
        size_t end = std::min(cells.size(), base + static_cast<size_t>(par));
        for (size_t i = base; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, [&, i] {
                return run_cell(cfg, scheme, cfg.workload, cells[i].load, cells[i].seed);
            }));
        }
        for (size_t i = base; i < end; ++i) reports[i] = batch[i - base].get();
    }

    ExperimentOutcome out;
    out.cells = static_cast<int>(cells.size());
    for (const auto& r : reports) {
        write_cell_outputs(cfg.out_dir, r);
        if (!r.invariants_ok) ++out.invariant_failures;
    }
    // aggregate across seeds, one file per load level
    for (double load : loads) {
        std::vector<RunReport> group;
        for (const auto& r : reports) {
            if (r.load == (cfg.workload == "incast" ? 0.0 : load)) group.push_back(r);
        }
        if (group.empty()) continue;
        AggregateReport agg = aggregate(group);
        char buf[160];
        std::snprintf(buf, sizeof buf, "aggregate_%s_%s_load%02d.json", cfg.scheme.c_str(),
                      cfg.workload.c_str(), static_cast<int>(std::lround(load * 100)));
        write_file((fs::path(cfg.out_dir) / buf).string(), aggregate_json(agg));
    }
    return out;
}

int aggregate_outputs(const std::string& out_dir) {
    struct Key {
        std::string scheme, workload;
        double load;
        bool operator<(const Key& o) const {
            if (scheme != o.scheme) return scheme < o.scheme;
            if (workload != o.workload) return workload < o.workload;
            return load < o.load;
        }
    };
    std::map<Key, std::vector<nlohmann::json>> groups;
    if (!fs::exists(out_dir)) return 0;
    for (const auto& entry : fs::recursive_directory_iterator(out_dir)) {
        if (!entry.is_regular_file() || entry.path().filename() != "summary.json") continue;
        std::ifstream in(entry.path());
        nlohmann::json j = nlohmann::json::parse(in);
        groups[{j["scheme"], j["workload"], j["load"]}].push_back(j);
    }
    int written = 0;
    for (const auto& [key, runs] : groups) {
        nlohmann::json agg;
        agg["scheme"] = key.scheme;
        agg["workload"] = key.workload;
        agg["load"] = key.load;
        agg["runs"] = runs.size();
        auto mean_of = [&](const char* field) {
            double sum = 0;
            for (const auto& j : runs) sum += j[field].get<double>();
            return sum / static_cast<double>(runs.size());
        };
        agg["mean_fct_short_s"] = mean_of("mean_fct_short_s");
        agg["mean_fct_large_s"] = mean_of("mean_fct_large_s");
        agg["mean_fct_all_s"] = mean_of("mean_fct_s");
        agg["mean_retrans_total"] = mean_of("retrans_total");
        agg["mean_facks"] = mean_of("facks_received");
        char buf[160];
        std::snprintf(buf, sizeof buf, "aggregate_%s_%s_load%02d.json", key.scheme.c_str(),
                      key.workload.c_str(), static_cast<int>(std::lround(key.load * 100)));
        write_file((fs::path(out_dir) / buf).string(), agg.dump(2) + "\n");
        ++written;
    }
    return written;
}

}  // namespace p4te
