#include "riverside/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace riverside {

std::string to_string(TerrainClass c) {
    switch (c) {
    case TerrainClass::River: return "River";
    case TerrainClass::Riverbank: return "Riverbank";
    case TerrainClass::Road: return "Road";
    case TerrainClass::Buildable: return "Buildable";
    case TerrainClass::Delta: return "Delta";
    case TerrainClass::Trees: return "Trees";
    case TerrainClass::ParkPath: return "ParkPath";
    case TerrainClass::Obstacle: return "Obstacle";
    }
    return "?";
}

std::string to_string(Scenario s) { return s == Scenario::PrePark ? "prepark" : "park"; }

std::optional<LegendEntry> Legend::decode(char c) const {
    if (c == hotspot) return LegendEntry{TerrainClass::ParkPath, true, false};
    if (c == branch) return LegendEntry{TerrainClass::River, false, true};
    if (c == river) return LegendEntry{TerrainClass::River};
    if (c == riverbank) return LegendEntry{TerrainClass::Riverbank};
    if (c == road) return LegendEntry{TerrainClass::Road};
    if (c == buildable) return LegendEntry{TerrainClass::Buildable};
    if (c == delta) return LegendEntry{TerrainClass::Delta};
    if (c == trees) return LegendEntry{TerrainClass::Trees};
    if (c == park_path) return LegendEntry{TerrainClass::ParkPath};
    if (c == obstacle) return LegendEntry{TerrainClass::Obstacle};
    return std::nullopt;
}

char Legend::encode(TerrainClass cls) const {
    switch (cls) {
    case TerrainClass::River: return river;
    case TerrainClass::Riverbank: return riverbank;
    case TerrainClass::Road: return road;
    case TerrainClass::Buildable: return buildable;
    case TerrainClass::Delta: return delta;
    case TerrainClass::Trees: return trees;
    case TerrainClass::ParkPath: return park_path;
    case TerrainClass::Obstacle: return obstacle;
    }
    return '?';
}

void Legend::validate() const {
    const std::pair<const char*, char> roles[] = {
        {"river", river},         {"riverbank", riverbank}, {"road", road},
        {"buildable", buildable}, {"delta", delta},         {"trees", trees},
        {"park_path", park_path}, {"obstacle", obstacle},   {"hotspot", hotspot},
        {"branch", branch},
    };
    for (std::size_t i = 0; i < std::size(roles); ++i) {
        const char c = roles[i].second;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\0')
            throw ConfigError(fmt::format("legend.{} must be a printable character", roles[i].first),
                              std::string("legend.") + roles[i].first);
        for (std::size_t j = 0; j < i; ++j) {
            if (roles[j].second == c)
                throw ConfigError(fmt::format("legend.{} and legend.{} both use '{}'", roles[j].first,
                                              roles[i].first, c),
                                  std::string("legend.") + roles[i].first);
        }
    }
}

namespace {

struct Field {
    std::string section;
    std::string key;
    std::function<void(const std::string&)> set;
    std::function<std::string()> get;

    std::string name() const { return section + "." + key; }
};

[[noreturn]] void bad_value(const std::string& name, const std::string& value, const char* expected) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as {}", name, value, expected), name);
}

template <class T>
T parse_number(const std::string& name, const std::string& text, const char* expected) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) bad_value(name, text, expected);
    return value;
}

bool parse_bool(const std::string& name, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    bad_value(name, text, "a boolean");
}

std::vector<Field> fields(SimConfig& c, const std::filesystem::path& base_dir) {
    std::vector<Field> out;
    auto add_int = [&](const char* s, const char* k, int& v) {
        std::string n = std::string(s) + "." + k;
        out.push_back({s, k, [&v, n](const std::string& t) { v = parse_number<int>(n, t, "an integer"); },
                       [&v] { return std::to_string(v); }});
    };
    auto add_real = [&](const char* s, const char* k, double& v) {
        std::string n = std::string(s) + "." + k;
        out.push_back({s, k, [&v, n](const std::string& t) { v = parse_number<double>(n, t, "a number"); },
                       [&v] { return fmt::format("{}", v); }});
    };
    auto add_bool = [&](const char* s, const char* k, bool& v) {
        std::string n = std::string(s) + "." + k;
        out.push_back({s, k, [&v, n](const std::string& t) { v = parse_bool(n, t); },
                       [&v] { return std::string(v ? "true" : "false"); }});
    };
    auto add_char = [&](const char* k, char& v) {
        std::string n = std::string("legend.") + k;
        out.push_back({"legend", k,
                       [&v, n](const std::string& t) {
                           if (t.size() != 1) bad_value(n, t, "a single character");
                           v = t[0];
                       },
                       [&v] { return std::string(1, v); }});
    };
    auto add_path = [&](const char* k, std::filesystem::path& v) {
        out.push_back({"simulation", k,
                       [&v, base_dir](const std::string& t) {
                           std::filesystem::path p(t);
                           v = (p.is_relative() && !t.empty()) ? base_dir / p : p;
                       },
                       [&v] { return v.string(); }});
    };

    out.push_back({"simulation", "scenario",
                   [&c](const std::string& t) {
                       if (t == "prepark") c.scenario = Scenario::PrePark;
                       else if (t == "park") c.scenario = Scenario::Park;
                       else bad_value("simulation.scenario", t, "prepark|park");
                   },
                   [&c] { return to_string(c.scenario); }});
    out.push_back({"simulation", "seed",
                   [&c](const std::string& t) {
                       c.seed = parse_number<std::uint64_t>("simulation.seed", t, "an unsigned integer");
                   },
                   [&c] { return std::to_string(c.seed); }});
    add_int("simulation", "ticks", c.ticks);
    add_int("simulation", "frame_every", c.frame_every);
    add_path("terrain", c.terrain);
    add_path("elevation", c.elevation);

    add_char("river", c.legend.river);
    add_char("riverbank", c.legend.riverbank);
    add_char("road", c.legend.road);
    add_char("buildable", c.legend.buildable);
    add_char("delta", c.legend.delta);
    add_char("trees", c.legend.trees);
    add_char("park_path", c.legend.park_path);
    add_char("obstacle", c.legend.obstacle);
    add_char("hotspot", c.legend.hotspot);
    add_char("branch", c.legend.branch);

    add_int("landscape", "d_streams", c.landscape.d_streams);
    add_int("landscape", "d_branch", c.landscape.d_branch);
    add_bool("landscape", "detect_branches", c.landscape.detect_branches);
    add_real("landscape", "hotspot_excitement", c.landscape.hotspot_excitement);

    auto& s = c.settlement;
    add_int("settlement", "river_buffer", s.river_buffer);
    add_int("settlement", "highland_radius", s.highland_radius);
    add_real("settlement", "highland_delta", s.highland_delta);
    add_real("settlement", "w_neighbor", s.w_neighbor);
    add_int("settlement", "r_neighbor", s.r_neighbor);
    add_real("settlement", "w_road", s.w_road);
    add_real("settlement", "w_river_far", s.w_river_far);
    add_int("settlement", "river_far_cap", s.river_far_cap);
    add_real("settlement", "score_tolerance", s.score_tolerance);
    add_int("settlement", "houses", s.houses);
    add_int("settlement", "houses_per_tick", s.houses_per_tick);
    add_bool("settlement", "demolition_clears_garbage", s.demolition_clears_garbage);

    auto& d = c.dynamics;
    add_real("dynamics", "mu", d.mu);
    add_real("dynamics", "rho", d.rho);
    add_real("dynamics", "epsilon0", d.epsilon0);
    add_real("dynamics", "dwell_p", d.dwell_p);
    add_int("dynamics", "resident_range", d.resident_range);

    auto& w = c.waste;
    add_real("waste", "waste_rate", w.waste_rate);
    add_real("waste", "dump_to_river", w.dump_to_river);
    add_real("waste", "litter_p", w.litter_p);
    add_int("waste", "warn_threshold", w.warn_threshold);
    add_int("waste", "warn_radius", w.warn_radius);
    add_int("waste", "community_radius", w.community_radius);
    add_int("waste", "cleanup_capacity", w.cleanup_capacity);
    add_bool("waste", "advect_river", w.advect_river);
    add_bool("waste", "riverside_drift", w.riverside_drift);

    auto& p = c.park;
    add_real("park", "visitor_spawn_rate", p.visitor_spawn_rate);
    add_int("park", "visit_length", p.visit_length);
    add_int("park", "initial_visitors", p.initial_visitors);
    add_int("park", "n_community", p.n_community);
    out.push_back({"park", "community_mode",
                   [&p](const std::string& t) {
                       if (t == "patrol") p.community_mode = CommunityMode::Patrol;
                       else if (t == "stationed") p.community_mode = CommunityMode::Stationed;
                       else bad_value("park.community_mode", t, "patrol|stationed");
                   },
                   [&p] { return std::string(p.community_mode == CommunityMode::Patrol ? "patrol" : "stationed"); }});
    out.push_back({"park", "start",
                   [&p](const std::string& t) {
                       if (t == "fresh") p.start = ParkStart::Fresh;
                       else if (t == "demolish") p.start = ParkStart::Demolish;
                       else bad_value("park.start", t, "fresh|demolish");
                   },
                   [&p] { return std::string(p.start == ParkStart::Fresh ? "fresh" : "demolish"); }});
    // Entrances: whitespace-separated "x,y" pairs.
    out.push_back({"park", "entrances",
                   [&p](const std::string& t) {
                       p.entrances.clear();
                       std::istringstream in(t);
                       std::string tok;
                       while (in >> tok) {
                           const auto comma = tok.find(',');
                           if (comma == std::string::npos) bad_value("park.entrances", tok, "x,y");
                           p.entrances.push_back(
                               {parse_number<int>("park.entrances", tok.substr(0, comma), "x,y"),
                                parse_number<int>("park.entrances", tok.substr(comma + 1), "x,y")});
                       }
                   },
                   [&p] {
                       std::string s;
                       for (const auto& e : p.entrances) s += fmt::format("{}{},{}", s.empty() ? "" : " ", e.x, e.y);
                       return s;
                   }});
    return out;
}

void check_range(const std::string& name, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi))
        throw ConfigError(fmt::format("{} = {} is outside [{}, {}]", name, v, lo, hi), name);
}

void check_nonneg(const std::string& name, double v) {
    if (!(v >= 0.0) || v == std::numeric_limits<double>::infinity())
        throw ConfigError(fmt::format("{} = {} must be finite and >= 0", name, v), name);
}

} // namespace

void SimConfig::validate() const {
    legend.validate();
    check_nonneg("simulation.ticks", ticks);
    check_nonneg("simulation.frame_every", frame_every);

    check_nonneg("landscape.d_streams", landscape.d_streams);
    check_nonneg("landscape.d_branch", landscape.d_branch);
    if (!(landscape.hotspot_excitement > 0.0) || !std::isfinite(landscape.hotspot_excitement))
        throw ConfigError(fmt::format("landscape.hotspot_excitement = {} must be > 0", landscape.hotspot_excitement),
                          "landscape.hotspot_excitement");

    const auto& s = settlement;
    check_nonneg("settlement.river_buffer", s.river_buffer);
    check_nonneg("settlement.highland_radius", s.highland_radius);
    check_nonneg("settlement.highland_delta", s.highland_delta);
    check_nonneg("settlement.w_neighbor", s.w_neighbor);
    check_nonneg("settlement.r_neighbor", s.r_neighbor);
    check_nonneg("settlement.w_road", s.w_road);
    check_nonneg("settlement.w_river_far", s.w_river_far);
    check_nonneg("settlement.river_far_cap", s.river_far_cap);
    check_nonneg("settlement.score_tolerance", s.score_tolerance);
    check_nonneg("settlement.houses", s.houses);
    check_nonneg("settlement.houses_per_tick", s.houses_per_tick);

    check_range("dynamics.mu", dynamics.mu, 0.0, 1.0);
    check_nonneg("dynamics.rho", dynamics.rho);
    check_nonneg("dynamics.epsilon0", dynamics.epsilon0);
    check_range("dynamics.dwell_p", dynamics.dwell_p, 0.0, 1.0);
    if (dynamics.dwell_p == 0.0)
        throw ConfigError("dynamics.dwell_p = 0 would make visitors dwell forever; must be in (0, 1]",
                          "dynamics.dwell_p");
    check_nonneg("dynamics.resident_range", dynamics.resident_range);

    check_range("waste.waste_rate", waste.waste_rate, 0.0, 1.0);
    check_range("waste.dump_to_river", waste.dump_to_river, 0.0, 1.0);
    check_range("waste.litter_p", waste.litter_p, 0.0, 1.0);
    check_nonneg("waste.warn_threshold", waste.warn_threshold);
    check_nonneg("waste.warn_radius", waste.warn_radius);
    check_nonneg("waste.community_radius", waste.community_radius);
    check_nonneg("waste.cleanup_capacity", waste.cleanup_capacity);

    check_nonneg("park.visitor_spawn_rate", park.visitor_spawn_rate);
    check_nonneg("park.visit_length", park.visit_length);
    check_nonneg("park.initial_visitors", park.initial_visitors);
    check_nonneg("park.n_community", park.n_community);
}

SimConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
    }

    SimConfig config;
    auto table = fields(config, base_dir);
    std::map<std::string, const Field*> by_name;
    for (const auto& f : table) by_name.emplace(f.name(), &f);

    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError(fmt::format("key '{}' appears outside any [section]", section), section);
        for (const auto& [key, value] : body) {
            const std::string name = section + "." + key;
            auto it = by_name.find(name);
            if (it == by_name.end()) throw ConfigError(fmt::format("unknown config key '{}'", name), name);
            it->second->set(value.data());
        }
    }
    config.validate();
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    return parse_config(in, path.parent_path());
}

void write_config(std::ostream& out, const SimConfig& config) {
    SimConfig copy = config;
    const auto table = fields(copy, {});
    std::string section;
    for (const auto& f : table) {
        if (f.section != section) {
            if (!section.empty()) out << '\n';
            section = f.section;
            out << '[' << section << "]\n";
        }
        out << f.key << " = " << f.get() << '\n';
    }
}

} // namespace riverside
