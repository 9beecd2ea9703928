#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/corpus.hpp"
#include "qgen/query.hpp"

namespace qgen::testing {

/// The three fictional publications used as the running example.
inline std::vector<Publication> table1() {
    return {
        {"s1", {"Smith", "Jones"}, "The question to 42", 2001, "Journal of Answers 1"},
        {"s2", {"Williams", "Smith"}, "Don't Panic!", 2002, "Journal of Answers 2"},
        {"s3", {"Taylor"}, "The Hitchhiker's Guide to the Galaxy", 2003, "Galactic Review 7"},
    };
}

inline Term term(std::string predicate, SearchValue value) { return {std::move(predicate), std::move(value)}; }

inline Query single(std::vector<Term> terms) { return Query{{BasicQuery{std::move(terms)}}}; }

inline Query single(Term t) { return single(std::vector<Term>{std::move(t)}); }

inline const PredicateDescriptor& predicate(const EngineCapabilities& caps, std::string_view name) {
    return *caps.find(name);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("qgen-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace qgen::testing
