#include "qgen/run_config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "qgen/random.hpp"
#include "qgen/record_format.hpp"
#include "qgen/text.hpp"

namespace qgen {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_items(std::string_view raw) {
    std::vector<std::string> out;
    std::string current;
    for (char c : raw) {
        if (c == ',' || c == '|') {
            if (!trim(current).empty()) out.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!trim(current).empty()) out.push_back(trim(current));
    return out;
}

long long parse_int(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(field, "expected an integer, got '" + text + "'");
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        if (!text.empty() && text.front() != '-') {
            const unsigned long long v = std::stoull(text, &used, 0);
            if (used == text.size()) return v;
        }
    } catch (const std::logic_error&) {
    }
    throw ConfigError(field, "expected an unsigned 64-bit integer, got '" + text + "'");
}

double parse_real(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(field, "expected a number, got '" + text + "'");
}

std::string resolve(const fs::path& base_dir, const std::string& value) {
    if (value.rfind("builtin:", 0) == 0) return value;
    const fs::path p(value);
    return (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
}

}  // namespace

RunConfig read_run_config(std::istream& in, const fs::path& base_dir, const std::string& source) {
    RecordFile file;
    try {
        file = read_records(in, kRunConfigFormat, source);
    } catch (const ParseError& e) {
        throw ConfigError("format", e.what());
    }

    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& r : file.records) {
        for (const auto& [key, raw] : r.fields()) entries.emplace_back(key, unescape_value(raw));
    }

    RunConfig c;
    // The named noise profile is the base that individual noise.* keys refine.
    for (const auto& [key, value] : entries) {
        if (key != "noise.profile") continue;
        if (value == "defaults") {
            c.noise = NoiseProfile::defaults();
        } else if (value == "zero") {
            c.noise = NoiseProfile::zero();
        } else {
            throw ConfigError(key, "expected defaults or zero, got '" + value + "'");
        }
    }

    std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters = {
        {"corpus", [&](auto&, auto& v) { c.corpus = resolve(base_dir, v); }},
        {"caps", [&](auto&, auto& v) { c.caps = resolve(base_dir, v); }},
        {"genspec", [&](auto&, auto& v) { c.genspecs.push_back(resolve(base_dir, v)); }},
        {"out", [&](auto&, auto& v) { c.out = resolve(base_dir, v); }},
        {"seed", [&](auto& k, auto& v) { c.seed = parse_u64(k, v); }},
        {"jobs", [&](auto& k, auto& v) {
             const auto j = parse_int(k, v);
             if (j < 1) throw ConfigError(k, "must be at least 1");
             c.jobs = static_cast<unsigned>(j);
         }},
        {"reps", [&](auto& k, auto& v) { c.reps = static_cast<int>(parse_int(k, v)); }},
        {"sizes", [&](auto& k, auto& v) {
             c.sizes.clear();
             for (const auto& s : split_items(v)) c.sizes.push_back(static_cast<int>(parse_int(k, s)));
         }},
        {"categories", [&](auto& k, auto& v) {
             c.categories.clear();
             for (const auto& s : split_items(v)) {
                 try {
                     c.categories.push_back(parse_category(s));
                 } catch (const Error& e) {
                     throw ConfigError(k, e.what());
                 }
             }
         }},
        {"follow", [&](auto& k, auto& v) {
             try {
                 c.follow = parse_follow_policy(v);
             } catch (const Error& e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"noise.profile", [](auto&, auto&) {}},
        {"noise.duplicate_probability", [&](auto& k, auto& v) { c.noise.duplicate_probability = parse_real(k, v); }},
        {"noise.max_duplicates", [&](auto& k, auto& v) { c.noise.max_duplicates = static_cast<int>(parse_int(k, v)); }},
        {"noise.title_typo_rate", [&](auto& k, auto& v) { c.noise.title_typo_rate = parse_real(k, v); }},
        {"noise.author_misspell_probability",
         [&](auto& k, auto& v) { c.noise.author_misspell_probability = parse_real(k, v); }},
        {"noise.year_shift_probability", [&](auto& k, auto& v) { c.noise.year_shift_probability = parse_real(k, v); }},
        {"noise.drop_cutoff_year", [&](auto& k, auto& v) { c.noise.drop_cutoff_year = static_cast<int>(parse_int(k, v)); }},
        {"noise.drop_probability_old", [&](auto& k, auto& v) { c.noise.drop_probability_old = parse_real(k, v); }},
        {"noise.distractor_count", [&](auto& k, auto& v) { c.noise.distractor_count = static_cast<int>(parse_int(k, v)); }},
        {"noise.seed", [&](auto& k, auto& v) {
             c.noise.seed = parse_u64(k, v);
             c.noise_seed_explicit = true;
         }},
        {"match.author_threshold", [&](auto& k, auto& v) { c.match.author_threshold = parse_real(k, v); }},
        {"match.title_threshold", [&](auto& k, auto& v) { c.match.title_threshold = parse_real(k, v); }},
        {"match.year_threshold", [&](auto& k, auto& v) { c.match.year_threshold = parse_real(k, v); }},
    };

    for (const auto& [key, value] : entries) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(key, "unknown key in " + source);
        it->second(key, value);
    }
    set_master_seed(c, c.seed);
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    return read_run_config(in, path.parent_path(), path.string());
}

void set_master_seed(RunConfig& config, std::uint64_t seed) {
    config.seed = seed;
    if (!config.noise_seed_explicit) config.noise.seed = split_seed(seed, "index");
}

void validate(const RunConfig& config) {
    if (config.corpus.empty()) throw ConfigError("corpus", "missing");
    if (!fs::exists(config.corpus)) throw ConfigError("corpus", "file not found: " + config.corpus.string());
    if (config.caps.rfind("builtin:", 0) == 0) {
        if (config.caps != "builtin:scholar") throw ConfigError("caps", "unknown builtin '" + config.caps + "'");
    } else if (!fs::exists(config.caps)) {
        throw ConfigError("caps", "file not found: " + config.caps);
    }
    if (config.genspecs.empty()) throw ConfigError("genspec", "at least one generator spec is required");
    for (const auto& g : config.genspecs) {
        if (g.rfind("builtin:", 0) == 0) {
            const auto name = g.substr(8);
            if (name == "catalog") continue;
            try {
                const int n = std::stoi(name);
                if (n >= 1 && n <= 10 && std::to_string(n) == name) continue;
            } catch (const std::logic_error&) {
            }
            throw ConfigError("genspec", "unknown builtin '" + g + "' (expected builtin:catalog or builtin:1..10)");
        }
        if (!fs::exists(g)) throw ConfigError("genspec", "file not found: " + g);
    }
    if (config.sizes.empty()) throw ConfigError("sizes", "at least one size is required");
    for (int s : config.sizes) {
        if (s < 1) throw ConfigError("sizes", "sizes must be at least 1");
    }
    if (config.categories.empty()) throw ConfigError("categories", "at least one category is required");
    if (config.reps < 1) throw ConfigError("reps", "must be at least 1");
    if (config.jobs < 1) throw ConfigError("jobs", "must be at least 1");
    if (config.out.empty()) throw ConfigError("out", "missing");
    try {
        config.noise.validate();
    } catch (const Error& e) {
        throw ConfigError("noise", e.what());
    }
    try {
        config.match.validate();
    } catch (const Error& e) {
        throw ConfigError("match", e.what());
    }
}

}  // namespace qgen
