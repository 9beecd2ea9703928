#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgen {

/// One line of a keyed text file: TAB-separated `key=value` fields.
///
/// Values escape backslash, TAB, newline and `|` with a backslash. List
/// values join their items with an unescaped `|`.
class Record {
public:
    Record() = default;
    Record(std::string source, std::size_t line) : source_(std::move(source)), line_(line) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& source() const noexcept { return source_; }

    void add(std::string key, std::string raw_value);

    bool has(std::string_view key) const;
    /// Key of the first field; identifies the record type in multi-type files.
    std::string_view first_key() const;

    /// Unescaped scalar value; throws ParseError naming the line if absent.
    std::string get(std::string_view key) const;
    std::string get_or(std::string_view key, std::string fallback) const;
    std::vector<std::string> get_list(std::string_view key) const;
    long long get_int(std::string_view key) const;
    double get_double(std::string_view key) const;
    bool get_bool(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& fields() const noexcept { return fields_; }

    [[noreturn]] void fail(const std::string& message) const;

private:
    const std::string* raw(std::string_view key) const;

    std::string source_;
    std::size_t line_ = 0;
    std::vector<std::pair<std::string, std::string>> fields_;
};

struct RecordFile {
    std::string format;
    std::vector<Record> records;
};

/// Reads a keyed file. The first non-comment line must be `format=<expected>`.
/// Blank lines and lines starting with '#' are skipped.
RecordFile read_records(std::istream& in, std::string_view expected_format, const std::string& source);
RecordFile read_record_file(const std::filesystem::path& path, std::string_view expected_format);

std::string escape_value(std::string_view value);
std::string unescape_value(std::string_view raw);
std::string join_list(const std::vector<std::string>& items);
std::vector<std::string> split_list(std::string_view raw);

class RecordWriter {
public:
    RecordWriter(std::ostream& out, std::string_view format);

    RecordWriter& field(std::string_view key, std::string_view value);
    RecordWriter& field(std::string_view key, long long value);
    RecordWriter& list(std::string_view key, const std::vector<std::string>& items);
    void end_record();

private:
    std::ostream& out_;
    bool first_field_ = true;
};

}  // namespace qgen
