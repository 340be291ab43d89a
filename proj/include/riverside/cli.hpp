#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace riverside {
struct SimConfig;
struct World;
} // namespace riverside

namespace riverside::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kInvariantHalt = 3,
    kOverwriteRefused = 4,
};

struct RunOptions {
    std::filesystem::path config;
    std::filesystem::path out;
    std::vector<std::uint64_t> seeds; ///< empty: the config's own seed
    bool force = false;
    std::optional<int> frame_every;
};

struct CompareOptions {
    std::string pre_glob;
    std::string post_glob;
    std::filesystem::path out;
    bool force = false;
};

struct ValidateOptions {
    std::filesystem::path config;
    bool print_defaults = false;
};

/// "1,2,5-8" -> {1,2,5,6,7,8}. Throws ConfigError on malformed input.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Writes metrics_{seed}.csv (and frames_{seed}/frame_{tick}.txt) per seed.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// The part of cmd_run after the config and map are loaded.
int run_seeds(const SimConfig& base, std::shared_ptr<const World> world, const RunOptions& opts, std::ostream& out,
              std::ostream& err);

/// Writes comparison.txt and comparison.csv into opts.out and echoes the text.
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

} // namespace riverside::cli
