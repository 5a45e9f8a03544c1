#include "p4te/baselines.hpp"

namespace p4te {

void HulaLeafState::update(int origin_leaf, int port, double util, SimTime now) {
    BestHop& b = best_[origin_leaf];
    bool stale = b.port < 0 || now - b.at > aging_;
    bool better = util < b.util || (util == b.util && port < b.port);
    if (stale || better || port == b.port) {
        b.port = port;
        b.util = util;
        b.at = now;
    }
}

}  // namespace p4te
