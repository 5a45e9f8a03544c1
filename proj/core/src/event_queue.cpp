#include "p4te/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace p4te {

uint64_t EventQueue::schedule(SimTime at, Handler fn) {
    if (at < now_) {
        throw std::logic_error("schedule in the past: at=" + std::to_string(at) +
                               " now=" + std::to_string(now_));
    }
    uint64_t seq = next_seq_++;
    heap_.push(Entry{at, seq, std::move(fn)});
    return seq;
}

SimSummary EventQueue::run_until(SimTime t_end) {
    while (!heap_.empty() && heap_.top().at <= t_end) {
        // Moving the handler out before pop keeps it alive while it runs
        // and may schedule further events.
        Entry e = std::move(const_cast<Entry&>(heap_.top()));
        heap_.pop();
        now_ = e.at;
        e.fn();
        ++dispatched_;
    }
    if (now_ < t_end && t_end != INT64_MAX) now_ = t_end;
    return SimSummary{dispatched_, now_};
}

}  // namespace p4te
