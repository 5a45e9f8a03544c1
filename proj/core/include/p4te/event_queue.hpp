#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "p4te/time.hpp"

namespace p4te {

struct SimSummary {
    uint64_t events_dispatched = 0;
    SimTime now = 0;
};

// Single-threaded event loop. Ties at equal time are broken by insertion
// sequence number, which is part of the reproducibility contract: the same
// (config, seed) pair replays the exact same event order.
class EventQueue {
  public:
    using Handler = std::function<void()>;

    SimTime now() const { return now_; }

    uint64_t schedule(SimTime at, Handler fn);
    void schedule_in(SimTime delay, Handler fn) { schedule(now_ + delay, std::move(fn)); }

    SimSummary run_until(SimTime t_end);
    SimSummary run_all() { return run_until(INT64_MAX); }

    bool empty() const { return heap_.empty(); }
    size_t pending() const { return heap_.size(); }

  private:
    struct Entry {
        SimTime at;
        uint64_t seq;
        Handler fn;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    SimTime now_ = 0;
    uint64_t next_seq_ = 0;
    uint64_t dispatched_ = 0;
};

}  // namespace p4te
