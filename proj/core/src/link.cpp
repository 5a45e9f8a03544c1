#include "p4te/link.hpp"

#include <utility>

namespace p4te {

Link::EnqueueResult Link::enqueue(Packet pkt, int cost_millislots) {
    if (full()) {
        count_drop(pkt);
        return {Enq::Dropped, depth()};
    }
    int depth_before = depth();
    ++counters_.enq;
    if (pkt.is_data()) ++counters_.data_enq;
    q_.emplace_back(std::move(pkt), cost_millislots);
    if (!busy_) serve_next(eq_->now());
    return {Enq::Enqueued, depth_before};
}

void Link::serve_next(SimTime t) {
    if (q_.empty()) {
        busy_ = false;
        return;
    }
    busy_ = true;
    SimTime done = t + service_ns(q_.front().second);
    busy_until_ = done;
    eq_->schedule(done, [this, done] {
        // The packet stays in the queue while on the wire; depth seen by
        // later arrivals therefore includes the one being serialized.
        Packet pkt = std::move(q_.front().first);
        q_.pop_front();
        ++counters_.deq;
        counters_.bytes += static_cast<uint64_t>(pkt.size_bytes);
        SimTime arrive = done + cfg_.prop_delay;
        eq_->schedule(arrive, [this, p = std::move(pkt)]() mutable { deliver_(std::move(p)); });
        serve_next(done);
    });
}

}  // namespace p4te
