#pragma once

#include <cstdint>
#include <vector>

#include "p4te/packet.hpp"
#include "p4te/time.hpp"

namespace p4te {

// Register-array style flowlet tracking: 5-tuple hashes index a fixed slot
// table, colliding flows simply merge into one flowlet. A slot whose last
// packet is older than the gap threshold starts a new flowlet and may pick
// a fresh port; otherwise the slot's last port is reused.
class FlowletTable {
  public:
    FlowletTable(size_t slot_count, SimTime gap_threshold)
        : mask_(slot_count - 1),
          gap_(gap_threshold),
          last_seen_(slot_count, kNever),
          last_port_(slot_count, -1),
          generation_(slot_count, 0),
          next_index_(slot_count, 0) {
        // power-of-two slot counts keep indexing a mask
        if ((slot_count & (slot_count - 1)) != 0 || slot_count == 0) {
            last_seen_.assign(1, kNever);
            mask_ = 0;
        }
    }

    struct Touch {
        uint32_t slot;
        bool new_flowlet;
        int port;  // valid when !new_flowlet
        FlowletStamp stamp;
    };

    Touch touch(uint64_t hash, SimTime now) {
        uint32_t slot = static_cast<uint32_t>(hash & mask_);
        bool fresh = now - last_seen_[slot] >= gap_;
        last_seen_[slot] = now;
        if (fresh) {
            ++generation_[slot];
            next_index_[slot] = 0;
        }
        FlowletStamp stamp{slot, generation_[slot], next_index_[slot]++, true};
        return {slot, fresh, last_port_[slot], stamp};
    }

    void commit_port(uint32_t slot, int port) { last_port_[slot] = port; }

    SimTime gap_threshold() const { return gap_; }
    size_t slots() const { return mask_ + 1; }

  private:
    static constexpr SimTime kNever = INT64_MIN / 4;
    uint64_t mask_;
    SimTime gap_;
    std::vector<SimTime> last_seen_;
    std::vector<int> last_port_;
    std::vector<uint32_t> generation_;
    std::vector<uint32_t> next_index_;
};

}  // namespace p4te
