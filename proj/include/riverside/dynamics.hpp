#pragma once

#include "riverside/config.hpp"
#include "riverside/kernels.hpp"
#include "riverside/landscape.hpp"
#include "riverside/rng.hpp"

#include <optional>
#include <span>
#include <vector>

namespace riverside {

/// Per-cell excitement with hotspot cells as fixed (Dirichlet) sources.
struct ExcitementField {
    struct Source {
        std::size_t cell = 0;
        double base = 0.0;
        friend bool operator==(const Source&, const Source&) = default;
    };

    int width = 0;
    int height = 0;
    double mu = 0.0;
    std::vector<double> p;
    std::vector<std::uint8_t> walkable;
    std::vector<Source> sources;

    /// Zero field with every hotspot of `grid` clamped at its base excitement.
    static ExcitementField from_grid(const TerrainGrid& grid, double mu);

    friend bool operator==(const ExcitementField&, const ExcitementField&) = default;
};

/// One synchronous update: p'(c) = mu * sum_{walkable Moore n} p(n) / 8 on
/// walkable cells, 0 elsewhere, then sources reset to their base value.
void diffuse_excitement(ExcitementField& field, kernels::Exec exec = kernels::Exec::Parallel);

enum class AgentKind : std::uint8_t { Resident, Visitor, CommunityMember };

struct Agent {
    std::uint64_t id = 0;
    AgentKind kind = AgentKind::Visitor;
    Coord coord;
    Coord home;                               ///< residents: their house
    std::optional<std::size_t> target;        ///< hotspot index
    std::optional<std::size_t> last_visited;  ///< hotspot whose dwell just ended
    int dwell_remaining = 0;
    bool dwelling = false;
    bool carrying_litter = false;
    double utility = 0.0;
    long spawn_tick = 0;

    friend bool operator==(const Agent&, const Agent&) = default;
};

struct PenaltyParams {
    double rho = 0.0;
    double epsilon0 = 0.0;
};

/// Crowding + dirtiness penalty at `c`:
///   rho * (sum of previous-tick utilities of agents on the 8 neighbour cells) / 8
///   + epsilon0 * (garbage on c and its 8 neighbours).
/// `utility_sum` holds, per cell, the summed previous-tick utility of the
/// agents standing there.
double crowding_penalty(Coord c, int width, int height, std::span<const double> utility_sum,
                        std::span<const std::int64_t> garbage, const PenaltyParams& params);

/// Same quantity computed directly from an agent list (O(agents)).
double crowding_penalty(Coord c, int width, int height, std::span<const Agent> agents,
                        std::span<const std::int64_t> garbage, const PenaltyParams& params);

/// x = (sum of p over in-bounds Moore neighbours) / 8 - f. May be negative.
double agent_utility(Coord c, const ExcitementField& field, double f);

/// Hotspot index sampled proportionally to base excitement, never `exclude`
/// unless it is the only hotspot. Throws ConfigError on an empty list.
std::size_t choose_next_hotspot(std::span<const Hotspot> hotspots, std::optional<std::size_t> exclude, Rng& rng);

struct StepOutcome {
    bool chose_target = false;
    bool moved = false;
    bool arrived = false;   ///< reached the target this tick
    bool resampled = false; ///< target unreachable, a new one was drawn
    bool dwell_tick = false;
    bool finished_dwell = false;
};

/// Hotspot-to-hotspot wandering, one tick:
///  (a) no target: pick one (excluding the hotspot just left), then continue;
///  (b) target not reached: move to the can_step neighbour with the smallest
///      walk distance to it, uniform tie-break; if none improves, resample;
///  (c) on the target: draw a geometric(dwell_p) dwell on the first tick,
///      count it down, clear the target when it reaches 0.
/// Throws InvariantViolation if the agent stands on a non-walkable cell.
StepOutcome step_agent(Agent& agent, const TerrainGrid& grid, std::span<const std::vector<int>> hotspot_dist,
                       double dwell_p, Rng& rng);

/// Residents: random step among can_step neighbours within `range` of home
/// (one draw when at least one candidate exists; otherwise stay).
void resident_walk(Agent& agent, const TerrainGrid& grid, int range, Rng& rng);

} // namespace riverside
