#include "riverside/garbage.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace riverside {

std::int64_t GarbageField::collect(std::size_t cell, std::int64_t units) {
    const std::int64_t taken = std::min(units, in_place[cell]);
    if (taken <= 0) return 0;
    in_place[cell] -= taken;
    in_place_total -= taken;
    collected_total += taken;
    return taken;
}

std::string GarbageField::audit() const {
    std::int64_t pile = 0;
    for (auto v : in_place) {
        if (v < 0) return "negative in-place pile";
        pile += v;
    }
    std::int64_t river = 0;
    for (auto v : river_load) {
        if (v < 0) return "negative river account";
        river += v;
    }
    if (pile != in_place_total)
        return fmt::format("in-place piles sum to {} but running total is {}", pile, in_place_total);
    if (river != river_total)
        return fmt::format("river accounts sum to {} but river_total is {}", river, river_total);
    if (collected_total < 0) return "negative collected_total";
    if (generated_total != pile + river + collected_total)
        return fmt::format("ledger broken: generated {} != in_place {} + river {} + collected {}", generated_total,
                           pile, river, collected_total);
    return {};
}

} // namespace riverside
