#include "p4te/transport.hpp"

#include <algorithm>
#include <cassert>

namespace p4te {

FlowSender::FlowSender(const TransportConfig& cfg, EventQueue& eq, uint64_t flow_id,
                       FiveTuple tuple, TrafficClass cls, int64_t size_bytes, InjectFn inject,
                       DoneFn on_done)
    : cfg_(cfg),
      eq_(eq),
      flow_id_(flow_id),
      tuple_(tuple),
      cls_(cls),
      size_(size_bytes),
      cwnd_(cfg.init_cwnd_bytes),
      ssthresh_(cfg.max_cwnd_bytes),
      rto_cur_(cfg.rto),
      inject_(std::move(inject)),
      on_done_(std::move(on_done)) {}

void FlowSender::begin() {
    start_time_ = eq_.now();
    tick();
}

void FlowSender::tick() {
    while (!done_ && next_seq_ < size_ && next_seq_ - highest_acked_ < cwnd_) {
        inject_data(next_seq_);
        next_seq_ += std::min(cfg_.mss_bytes, size_ - next_seq_);
        max_sent_ = std::max(max_sent_, next_seq_);
    }
    if (!done_ && next_seq_ > highest_acked_) arm_rto();
}

void FlowSender::inject_data(int64_t seq) {
    if (seq < max_sent_) ++retrans_;
    Packet p;
    p.src_addr = tuple_.src_addr;
    p.dst_addr = tuple_.dst_addr;
    p.src_port = tuple_.src_port;
    p.dst_port = tuple_.dst_port;
    p.flow_label = tuple_.flow_label;
    p.traffic_class = cls_;
    p.size_bytes = static_cast<int32_t>(std::min(cfg_.mss_bytes, size_ - seq));
    p.seq = seq;
    p.echo = highest_acked_;
    p.window = cwnd_;
    inject_(std::move(p));
}

void FlowSender::on_ack(const Packet& pkt) {
    if (done_) return;
    if (pkt.has(flag::FACK)) {
        ++facks_;
        cwnd_ = std::max(cfg_.mss_bytes, std::min(cwnd_, pkt.window));
        if (pkt.ack <= highest_acked_) {
            ++dup_acks_;
            if (dup_acks_ == 3) fast_retransmit();
        }
        tick();
        return;
    }

    if (pkt.ack > highest_acked_) {
        highest_acked_ = pkt.ack;
        dup_acks_ = 0;
        rto_cur_ = cfg_.rto;
        if (pkt.has(flag::ECN_ECHO)) {
            if (highest_acked_ > last_cut_end_) {
                ssthresh_ = std::max(cwnd_ / 2, 2 * cfg_.mss_bytes);
                cwnd_ = std::max(cfg_.mss_bytes, cwnd_ / 2);
                last_cut_end_ = next_seq_;  // one cut per window of data
            }
        } else {
            int64_t inc = cwnd_ < ssthresh_ ? cfg_.mss_bytes
                                            : std::max<int64_t>(1, cfg_.mss_bytes * cfg_.mss_bytes / cwnd_);
            cwnd_ = std::min(cfg_.max_cwnd_bytes, cwnd_ + inc);
        }
        if (highest_acked_ >= size_) {
            complete();
            return;
        }
        ++timer_gen_;  // push the timer out past this progress
        timer_armed_ = false;
        tick();
        return;
    }

    ++dup_acks_;
    if (dup_acks_ == 3) fast_retransmit();
    tick();
}

void FlowSender::fast_retransmit() {
    inject_data(highest_acked_);
    ssthresh_ = std::max(cwnd_ / 2, 2 * cfg_.mss_bytes);
    cwnd_ = std::max(cfg_.mss_bytes, ssthresh_);
    dup_acks_ = 0;
}

void FlowSender::arm_rto() {
    if (timer_armed_) return;
    timer_armed_ = true;
    uint64_t gen = ++timer_gen_;
    eq_.schedule(eq_.now() + rto_cur_, [this, gen] { handle_timeout(gen); });
}

void FlowSender::handle_timeout(uint64_t gen) {
    if (done_ || gen != timer_gen_) return;
    timer_armed_ = false;
    if (next_seq_ <= highest_acked_) return;
    ssthresh_ = std::max(cwnd_ / 2, 2 * cfg_.mss_bytes);
    cwnd_ = cfg_.mss_bytes;
    next_seq_ = highest_acked_;  // resume from the last acked byte
    rto_cur_ = std::min(rto_cur_ * 2, cfg_.rto_max);
    tick();
}

void FlowSender::complete() {
    done_ = true;
    ++timer_gen_;
    FlowCompletionRecord rec{flow_id_, cls_, size_, start_time_, eq_.now(), retrans_, facks_};
    on_done_(rec);
}

void FlowReceiver::on_data(const Packet& pkt) {
    if (pkt.has(flag::ECN_CE)) ce_seen_ = true;

    // Insert the uncovered parts of [seq, seq+len); anything already seen
    // is a wire duplicate and is discarded before reassembly.
    int64_t lo = std::max(pkt.seq, rcv_next_);
    int64_t hi = pkt.seq + pkt.size_bytes;
    bool added = false;
    while (lo < hi) {
        auto it = pending_.upper_bound(lo);
        if (it != pending_.begin()) {
            auto prev = std::prev(it);
            if (prev->second > lo) {
                lo = prev->second;
                continue;
            }
        }
        int64_t gap_end = it != pending_.end() ? std::min(hi, it->first) : hi;
        pending_[lo] = gap_end;
        added = true;
        lo = gap_end;
    }
    if (!added) ++wire_dups_;

    auto cur = pending_.begin();
    while (cur != pending_.end() && cur->first <= rcv_next_) {
        rcv_next_ = std::max(rcv_next_, cur->second);
        cur = pending_.erase(cur);
    }

    Packet ackp;
    ackp.src_addr = tuple_.dst_addr;
    ackp.dst_addr = tuple_.src_addr;
    ackp.src_port = tuple_.dst_port;
    ackp.dst_port = tuple_.src_port;
    ackp.flow_label = tuple_.flow_label;
    ackp.traffic_class = cls_;
    ackp.size_bytes = 64;
    ackp.ack = rcv_next_;
    ackp.set(flag::ACK);
    if (ce_seen_) {
        ackp.set(flag::ECN_ECHO);
        ce_seen_ = false;
    }
    inject_(std::move(ackp));
}

}  // namespace p4te
