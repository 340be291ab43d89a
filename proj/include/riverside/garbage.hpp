#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace riverside {

/// Integral garbage ledger. Every unit that enters the environment is counted
/// once in generated_total and sits in exactly one of: a cell's in_place pile,
/// the river (river_total, with a per-cell river_load account), or
/// collected_total.
struct GarbageField {
    std::vector<std::int64_t> in_place;
    std::vector<std::int64_t> river_load;
    std::int64_t in_place_total = 0;
    std::int64_t river_total = 0;
    std::int64_t collected_total = 0;
    std::int64_t generated_total = 0;

    GarbageField() = default;
    explicit GarbageField(std::size_t cells) : in_place(cells, 0), river_load(cells, 0) {}

    void litter(std::size_t cell, std::int64_t units = 1) {
        in_place[cell] += units;
        in_place_total += units;
        generated_total += units;
    }
    void dump_river(std::size_t river_cell, std::int64_t units = 1) {
        river_load[river_cell] += units;
        river_total += units;
        generated_total += units;
    }
    /// Moves up to `units` from a pile to collected; returns the amount moved.
    std::int64_t collect(std::size_t cell, std::int64_t units);

    /// Empty string when the ledger balances, otherwise a description of the
    /// mismatch. Recomputes the totals from the per-cell arrays.
    std::string audit() const;

    friend bool operator==(const GarbageField&, const GarbageField&) = default;
};

} // namespace riverside
