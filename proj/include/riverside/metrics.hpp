#pragma once

#include "riverside/engine.hpp"

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace riverside {

inline constexpr std::string_view kMetricsHeader =
    "tick,population,n_houses,total_in_place,river_total,collected_total,dirtiness,garbage_per_capita,littering_events";

/// Real-valued columns use fixed 9-decimal formatting so the file is
/// byte-identical for identical runs.
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);

/// Throws FormatError on a wrong header or malformed row.
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

struct ScenarioSummary {
    std::size_t runs = 0;
    double mean_delta_dirtiness = 0.0; ///< per tick, averaged over runs
    double mean_garbage_per_capita = 0.0;
    std::int64_t littering_events = 0;
};

struct Comparison {
    std::size_t ticks = 0; ///< steps per run (rows - 1)
    ScenarioSummary prepark;
    ScenarioSummary park;
    /// park / prepark mean dirtiness slope. 1 when both are zero, +inf when
    /// only the prepark slope is zero.
    double damping_ratio = 0.0;
};

ScenarioSummary summarize(std::span<const std::vector<MetricsRow>> runs);

/// Throws ConfigError when a side is empty or the runs disagree on length.
Comparison compare_runs(std::span<const std::vector<MetricsRow>> prepark, std::span<const std::vector<MetricsRow>> park);

void write_comparison_text(std::ostream& out, const Comparison& c);
void write_comparison_csv(std::ostream& out, const Comparison& c);

} // namespace riverside
