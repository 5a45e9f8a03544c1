#pragma once

#include <cassert>
#include <cstdint>

#include "p4te/packet.hpp"
#include "p4te/time.hpp"

namespace p4te {

// Token buckets replenish with exact integer arithmetic: token counts are
// whole cost units, fractional accrual is carried as a numerator of
// units*ns. A bucket that fills to its burst size discards the fraction.
// Rate configuration is fixed for the meter's lifetime.

class TrTcmMeter {
  public:
    struct Config {
        int64_t cir_units_per_s = 0;  // committed rate
        int64_t pir_units_per_s = 0;  // peak rate, >= cir
        int64_t cbs_units = 0;        // committed burst
        int64_t pbs_units = 0;        // peak burst
    };

    TrTcmMeter() = default;
    TrTcmMeter(Config cfg, SimTime t0)
        : cfg_(cfg), tc_(cfg.cbs_units), tp_(cfg.pbs_units), last_(t0) {
        assert(cfg.pir_units_per_s >= cfg.cir_units_per_s);
    }

    // Color-blind two-rate three-color marking: RED when the peak bucket
    // lacks tokens, YELLOW when only the committed bucket lacks them,
    // GREEN otherwise (debiting both).
    Color mark(SimTime now, int64_t cost_units);

    const Config& config() const { return cfg_; }
    int64_t committed_tokens() const { return tc_; }
    int64_t peak_tokens() const { return tp_; }
    SimTime last_update() const { return last_; }
    bool bounds_ok() const {
        return tc_ >= 0 && tc_ <= cfg_.cbs_units && tp_ >= 0 && tp_ <= cfg_.pbs_units;
    }

  private:
    Config cfg_;
    int64_t tc_ = 0, tp_ = 0;
    int64_t tc_rem_ = 0, tp_rem_ = 0;
    SimTime last_ = 0;
};

class SrTcmMeter {
  public:
    struct Config {
        int64_t rate_units_per_s = 0;
        int64_t burst_units = 0;
    };

    SrTcmMeter() = default;
    SrTcmMeter(Config cfg, SimTime t0) : cfg_(cfg), tokens_(cfg.burst_units), last_(t0) {}

    // GREEN if the bucket can cover the cost (debits), YELLOW otherwise.
    Color mark(SimTime now, int64_t cost_units);

    const Config& config() const { return cfg_; }
    int64_t tokens() const { return tokens_; }
    SimTime last_update() const { return last_; }
    bool bounds_ok() const { return tokens_ >= 0 && tokens_ <= cfg_.burst_units; }

  private:
    Config cfg_;
    int64_t tokens_ = 0;
    int64_t rem_ = 0;
    SimTime last_ = 0;
};

}  // namespace p4te
