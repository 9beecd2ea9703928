#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgen {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line that failed.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& message)
        : Error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

}  // namespace qgen
