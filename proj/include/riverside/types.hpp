#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace riverside {

/// Grid coordinate: x is the column, y the row. Cells are stored row-major.
struct Coord {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

/// Chebyshev (king-move) distance, the metric used for every grid distance.
constexpr int chebyshev(Coord a, Coord b) noexcept {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

/// Distance sentinel for cells with no reachable source.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Size of the Moore neighbourhood. Fixed; never configurable.
inline constexpr int kNeighbourhood = 8;

enum class TerrainClass : std::uint8_t {
    River,
    Riverbank,
    Road,
    Buildable,
    Delta,
    Trees,
    ParkPath,
    Obstacle,
};

std::string to_string(TerrainClass c);

// Error taxonomy. Loader and config problems are user errors; the two logic
// errors mark broken preconditions and runtime invariant breaches.

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LegendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value or scenario setup. `field()` names the
/// offending key (e.g. "dynamics.mu") when one applies.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, std::string field = {})
        : std::runtime_error(msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by the engine when a model invariant breaks mid-run.
class InvariantViolation : public std::logic_error {
public:
    /// tick < 0 means "not yet known"; the engine re-stamps it.
    InvariantViolation(long tick, const std::string& detail)
        : std::logic_error("tick " + std::to_string(tick) + ": " + detail), tick_(tick), detail_(detail) {}
    long tick() const noexcept { return tick_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    long tick_;
    std::string detail_;
};

} // namespace riverside
