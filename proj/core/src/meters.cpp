#include "p4te/meters.hpp"

namespace p4te {

namespace {

// tokens/rem hold the bucket as tokens + rem/1e9; adds rate*elapsed exactly.
void replenish(int64_t& tokens, int64_t& rem, int64_t rate_per_s, int64_t burst, SimTime elapsed) {
    __int128 num = static_cast<__int128>(rate_per_s) * elapsed + rem;
    int64_t add = static_cast<int64_t>(num / 1000000000);
    rem = static_cast<int64_t>(num % 1000000000);
    tokens += add;
    if (tokens >= burst) {
        tokens = burst;
        rem = 0;  // a full bucket sheds the fraction
    }
}

}  // namespace

Color TrTcmMeter::mark(SimTime now, int64_t cost_units) {
    assert(now >= last_);
    SimTime elapsed = now - last_;
    replenish(tc_, tc_rem_, cfg_.cir_units_per_s, cfg_.cbs_units, elapsed);
    replenish(tp_, tp_rem_, cfg_.pir_units_per_s, cfg_.pbs_units, elapsed);
    last_ = now;
    if (tp_ < cost_units) return Color::RED;
    if (tc_ < cost_units) {
        tp_ -= cost_units;
        return Color::YELLOW;
    }
    tp_ -= cost_units;
    tc_ -= cost_units;
    return Color::GREEN;
}

Color SrTcmMeter::mark(SimTime now, int64_t cost_units) {
    assert(now >= last_);
    replenish(tokens_, rem_, cfg_.rate_units_per_s, cfg_.burst_units, now - last_);
    last_ = now;
    if (tokens_ < cost_units) return Color::YELLOW;
    tokens_ -= cost_units;
    return Color::GREEN;
}

}  // namespace p4te
