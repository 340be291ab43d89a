#include "riverside/metrics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace riverside {

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
    out << kMetricsHeader << '\n';
    for (const auto& r : rows) {
        fmt::print(out, "{},{},{},{},{},{},{:.9f},{:.9f},{}\n", r.tick, r.population, r.n_houses, r.total_in_place,
                   r.river_total, r.collected_total, r.dirtiness, r.garbage_per_capita, r.littering_events);
    }
}

namespace {

template <class T>
T field(std::string_view text, std::size_t line) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError(fmt::format("metrics line {}: bad value '{}'", line, text));
    return v;
}

} // namespace

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("metrics file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricsHeader) throw FormatError("metrics file has an unexpected header");

    std::vector<MetricsRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string_view> cols;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            cols.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cols.size() != 9) throw FormatError(fmt::format("metrics line {}: expected 9 columns", lineno));
        MetricsRow r;
        r.tick = field<long>(cols[0], lineno);
        r.population = field<std::int64_t>(cols[1], lineno);
        r.n_houses = field<std::int64_t>(cols[2], lineno);
        r.total_in_place = field<std::int64_t>(cols[3], lineno);
        r.river_total = field<std::int64_t>(cols[4], lineno);
        r.collected_total = field<std::int64_t>(cols[5], lineno);
        r.dirtiness = field<double>(cols[6], lineno);
        r.garbage_per_capita = field<double>(cols[7], lineno);
        r.littering_events = field<std::int64_t>(cols[8], lineno);
        rows.push_back(r);
    }
    return rows;
}

ScenarioSummary summarize(std::span<const std::vector<MetricsRow>> runs) {
    ScenarioSummary s;
    s.runs = runs.size();
    if (runs.empty()) return s;
    double slope_sum = 0.0;
    double gpc_sum = 0.0;
    std::size_t gpc_rows = 0;
    for (const auto& rows : runs) {
        if (rows.size() > 1)
            slope_sum += (rows.back().dirtiness - rows.front().dirtiness) / static_cast<double>(rows.size() - 1);
        for (const auto& r : rows) {
            gpc_sum += r.garbage_per_capita;
            s.littering_events += r.littering_events;
        }
        gpc_rows += rows.size();
    }
    s.mean_delta_dirtiness = slope_sum / static_cast<double>(runs.size());
    s.mean_garbage_per_capita = gpc_rows ? gpc_sum / static_cast<double>(gpc_rows) : 0.0;
    return s;
}

Comparison compare_runs(std::span<const std::vector<MetricsRow>> prepark, std::span<const std::vector<MetricsRow>> park) {
    if (prepark.empty() || park.empty()) throw ConfigError("compare needs at least one run per scenario");
    const std::size_t rows = prepark.front().size();
    for (auto side : {prepark, park}) {
        for (const auto& r : side) {
            if (r.size() != rows)
                throw ConfigError(fmt::format("tick count mismatch: {} vs {} rows", r.size(), rows));
        }
    }
    Comparison c;
    c.ticks = rows > 0 ? rows - 1 : 0;
    c.prepark = summarize(prepark);
    c.park = summarize(park);
    const double pre = c.prepark.mean_delta_dirtiness;
    const double post = c.park.mean_delta_dirtiness;
    if (pre != 0.0)
        c.damping_ratio = post / pre;
    else
        c.damping_ratio = post == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return c;
}

void write_comparison_text(std::ostream& out, const Comparison& c) {
    fmt::print(out, "before/after river waste comparison ({} ticks per run)\n\n", c.ticks);
    fmt::print(out, "{:<28}{:>16}{:>16}\n", "", "prepark", "park");
    fmt::print(out, "{:<28}{:>16}{:>16}\n", "runs", c.prepark.runs, c.park.runs);
    fmt::print(out, "{:<28}{:>16.9f}{:>16.9f}\n", "mean dirtiness slope", c.prepark.mean_delta_dirtiness,
               c.park.mean_delta_dirtiness);
    fmt::print(out, "{:<28}{:>16.6f}{:>16.6f}\n", "mean garbage per capita", c.prepark.mean_garbage_per_capita,
               c.park.mean_garbage_per_capita);
    fmt::print(out, "{:<28}{:>16}{:>16}\n", "littering events", c.prepark.littering_events, c.park.littering_events);
    fmt::print(out, "\ndamping ratio (park / prepark slope): {:.6f}\n", c.damping_ratio);
}

void write_comparison_csv(std::ostream& out, const Comparison& c) {
    out << "ticks,runs_prepark,runs_park,mean_delta_dirtiness_prepark,mean_delta_dirtiness_park,"
           "mean_garbage_per_capita_prepark,mean_garbage_per_capita_park,littering_events_prepark,"
           "littering_events_park,damping_ratio\n";
    fmt::print(out, "{},{},{},{:.9f},{:.9f},{:.9f},{:.9f},{},{},{:.9f}\n", c.ticks, c.prepark.runs, c.park.runs,
               c.prepark.mean_delta_dirtiness, c.park.mean_delta_dirtiness, c.prepark.mean_garbage_per_capita,
               c.park.mean_garbage_per_capita, c.prepark.littering_events, c.park.littering_events, c.damping_ratio);
}

} // namespace riverside
