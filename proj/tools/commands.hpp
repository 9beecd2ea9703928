#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/generators.hpp"
#include "qgen/run_config.hpp"

namespace qgen::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPartialFailure = 2, kTotalFailure = 3 };

/// Command-line values that take precedence over the run config.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    std::optional<unsigned> jobs;
};

/// Loads the config, applies overrides and validates it. Throws ConfigError.
RunConfig prepare_config(const std::filesystem::path& config_path, const Overrides& overrides);

EngineCapabilities resolve_capabilities(const RunConfig& config);
std::vector<GeneratorSpec> resolve_genspecs(const RunConfig& config);

// Commands write their primary output to `out` unless an output path is
// given, and diagnostics to `log`. They return an ExitCode and throw
// qgen::Error (ConfigError for configuration problems) on failure.

int cmd_gen_corpus(std::size_t size, std::uint64_t seed, const std::optional<std::filesystem::path>& path,
                   std::ostream& out, std::ostream& log);
int cmd_gen_datasets(const std::filesystem::path& config_path, const Overrides& overrides, std::ostream& out,
                     std::ostream& log);
int cmd_build_index(const std::filesystem::path& config_path, const Overrides& overrides, std::ostream& out,
                    std::ostream& log);
/// Writes the warehouse to the configured (or overridden) directory and
/// prints a per-category summary to `out`.
int cmd_run(const std::filesystem::path& config_path, const Overrides& overrides, std::ostream& out,
            std::ostream& log);
int cmd_report(const std::string& kind, const std::filesystem::path& warehouse, std::optional<int> size,
               const std::optional<std::filesystem::path>& path, std::ostream& out, std::ostream& log);

}  // namespace qgen::cli
