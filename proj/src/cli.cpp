#include "riverside/cli.hpp"

#include "riverside/config.hpp"
#include "riverside/engine.hpp"
#include "riverside/metrics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <glob.h>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace riverside::cli {

namespace fs = std::filesystem;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    auto number = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw ConfigError(fmt::format("--seeds: cannot parse '{}'", s), "seeds");
        return v;
    };
    std::vector<std::uint64_t> seeds;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto tok = rest.substr(0, comma);
        if (const auto dash = tok.find('-'); dash != std::string_view::npos) {
            const auto lo = number(tok.substr(0, dash));
            const auto hi = number(tok.substr(dash + 1));
            if (hi < lo) throw ConfigError(fmt::format("--seeds: empty range '{}'", tok), "seeds");
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            seeds.push_back(number(tok));
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (seeds.empty()) throw ConfigError("--seeds: no seeds given", "seeds");
    return seeds;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    f << content;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    glob_t g{};
    std::vector<std::string> out;
    if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
    return out; // glob(3) returns paths sorted
}

bool is_user_error(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const FormatError*>(&e) ||
           dynamic_cast<const LegendError*>(&e) || dynamic_cast<const ShapeError*>(&e);
}

} // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    SimConfig base;
    std::shared_ptr<const World> world;
    try {
        base = load_config(opts.config);
        if (opts.frame_every) {
            base.frame_every = *opts.frame_every;
            base.validate();
        }
        world = World::load(base);
    } catch (const std::exception& e) {
        if (!is_user_error(e)) throw;
        fmt::print(err, "config error: {}\n", e.what());
        return kConfigError;
    }
    return run_seeds(base, world, opts, out, err);
}

int run_seeds(const SimConfig& base, std::shared_ptr<const World> world, const RunOptions& opts, std::ostream& out,
              std::ostream& err) {
    const auto seeds = opts.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : opts.seeds;
    std::vector<fs::path> targets;
    for (auto seed : seeds) {
        targets.push_back(opts.out / fmt::format("metrics_{}.csv", seed));
        if (base.frame_every > 0) targets.push_back(opts.out / fmt::format("frames_{}", seed));
    }
    if (!opts.force) {
        for (const auto& t : targets) {
            if (fs::exists(t)) {
                fmt::print(err, "refusing to overwrite '{}' (use --force)\n", t.string());
                return kOverwriteRefused;
            }
        }
    }
    fs::create_directories(opts.out);

    for (auto seed : seeds) {
        SimConfig config = base;
        config.seed = seed;
        const fs::path frame_dir = opts.out / fmt::format("frames_{}", seed);
        if (config.frame_every > 0) fs::create_directories(frame_dir);
        FrameSink sink = [&](long tick, const std::string& frame) {
            write_file(frame_dir / fmt::format("frame_{}.txt", tick), frame);
        };
        std::vector<MetricsRow> rows;
        try {
            rows = run(config, world, sink);
        } catch (const InvariantViolation& e) {
            fmt::print(err, "invariant halt (seed {}): {}\n", seed, e.what());
            return kInvariantHalt;
        } catch (const ConfigError& e) {
            fmt::print(err, "config error: {}\n", e.what());
            return kConfigError;
        }
        const auto csv = opts.out / fmt::format("metrics_{}.csv", seed);
        std::ofstream f(csv, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", csv.string()));
        write_metrics_csv(f, rows);
        const auto& last = rows.back();
        fmt::print(out, "seed {}: {} ticks, {} houses, river_total {}, dirtiness {:.6f}, littering {}\n", seed,
                   last.tick, last.n_houses, last.river_total, last.dirtiness, [&] {
                       std::int64_t n = 0;
                       for (const auto& r : rows) n += r.littering_events;
                       return n;
                   }());
    }
    return kOk;
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
    auto load_side = [&](const std::string& pattern, const char* label) {
        const auto files = expand_glob(pattern);
        if (files.empty()) throw ConfigError(fmt::format("{}: no files match '{}'", label, pattern));
        std::vector<std::vector<MetricsRow>> runs;
        for (const auto& path : files) {
            std::ifstream in(path);
            if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
            try {
                runs.push_back(read_metrics_csv(in));
            } catch (const FormatError& e) {
                throw FormatError(fmt::format("{}: {}", path, e.what()));
            }
        }
        return runs;
    };

    Comparison c;
    try {
        const auto pre = load_side(opts.pre_glob, "--pre");
        const auto post = load_side(opts.post_glob, "--post");
        c = compare_runs(pre, post);
    } catch (const std::exception& e) {
        if (!is_user_error(e)) throw;
        fmt::print(err, "compare error: {}\n", e.what());
        return kConfigError;
    }

    const fs::path txt = opts.out / "comparison.txt";
    const fs::path csv = opts.out / "comparison.csv";
    if (!opts.force) {
        for (const auto& t : {txt, csv}) {
            if (fs::exists(t)) {
                fmt::print(err, "refusing to overwrite '{}' (use --force)\n", t.string());
                return kOverwriteRefused;
            }
        }
    }
    fs::create_directories(opts.out);
    std::ostringstream text;
    write_comparison_text(text, c);
    write_file(txt, text.str());
    std::ostringstream table;
    write_comparison_csv(table, c);
    write_file(csv, table.str());
    out << text.str();
    return kOk;
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.print_defaults) {
        write_config(out, SimConfig{});
        return kOk;
    }
    try {
        const auto config = load_config(opts.config);
        const auto world = World::load(config);
        const auto state = init_scenario(config, world);
        fmt::print(out, "ok: {}x{} map, {} streams, {} hotspots, {} river cells; {} scenario starts with {} agents, {} houses\n",
                   world->grid.width, world->grid.height, world->grid.stream_count, world->grid.hotspots.size(),
                   world->river_cells, to_string(config.scenario), state.agents.size(),
                   state.settlement.houses.size());
        return kOk;
    } catch (const std::exception& e) {
        if (!is_user_error(e)) throw;
        fmt::print(err, "config error: {}\n", e.what());
        return kConfigError;
    }
}

} // namespace riverside::cli
