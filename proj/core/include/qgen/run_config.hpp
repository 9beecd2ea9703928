#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qgen/corpus.hpp"
#include "qgen/error.hpp"
#include "qgen/evaluator.hpp"
#include "qgen/matcher.hpp"
#include "qgen/noise.hpp"

namespace qgen {

inline constexpr std::string_view kRunConfigFormat = "qf-run-1";

/// Configuration problem attributed to one field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error("config field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    std::filesystem::path corpus;
    std::string caps = "builtin:scholar";  // path, or builtin:scholar
    std::vector<std::string> genspecs;     // paths, builtin:<n> or builtin:catalog
    NoiseProfile noise = NoiseProfile::defaults();
    bool noise_seed_explicit = false;  // otherwise the noise seed derives from `seed`
    MatchConfig match;
    std::vector<int> sizes{5, 30, 100};
    std::vector<Category> categories{std::begin(kAllCategories), std::end(kAllCategories)};
    int reps = 5;
    FollowPolicy follow;
    std::uint64_t seed = 0;
    std::filesystem::path out = "warehouse";
    unsigned jobs = 1;
};

/// Parses `format=qf-run-1` files: one `key=value` per line; `genspec` may
/// repeat. Relative paths resolve against `base_dir`. Throws ConfigError.
RunConfig read_run_config(std::istream& in, const std::filesystem::path& base_dir,
                          const std::string& source = "<stream>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Replaces the master seed, re-deriving the noise seed unless it was set explicitly.
void set_master_seed(RunConfig& config, std::uint64_t seed);

/// Checks ranges and that referenced files exist.
void validate(const RunConfig& config);

}  // namespace qgen
