#include "loopcrystal/oracle_cyclic.hpp"

namespace loopcrystal {

RankProfile multisegment_profile(const Multisegment& m, int p) {
    const int N = m.total_dim();
    RankProfile r(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(N), 0));
    for (const auto& [seg, count] : m.mult)
        for (int s = 0; s < seg.second; ++s) {
            const int v = cyclic::mod(seg.first - s, p);
            for (int t = 1; s + t <= seg.second - 1; ++t) r[static_cast<std::size_t>(v)][static_cast<std::size_t>(t - 1)] += count;
        }
    return r;
}

}  // namespace loopcrystal
