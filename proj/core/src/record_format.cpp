#include "qgen/record_format.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "qgen/error.hpp"
#include "qgen/text.hpp"

namespace qgen {

void Record::add(std::string key, std::string raw_value) { fields_.emplace_back(std::move(key), std::move(raw_value)); }

const std::string* Record::raw(std::string_view key) const {
    for (const auto& [k, v] : fields_) {
        if (k == key) return &v;
    }
    return nullptr;
}

bool Record::has(std::string_view key) const { return raw(key) != nullptr; }

std::string_view Record::first_key() const {
    return fields_.empty() ? std::string_view{} : std::string_view(fields_.front().first);
}

void Record::fail(const std::string& message) const { throw ParseError(source_, line_, message); }

std::string Record::get(std::string_view key) const {
    const auto* v = raw(key);
    if (v == nullptr) fail("missing field '" + std::string(key) + "'");
    return unescape_value(*v);
}

std::string Record::get_or(std::string_view key, std::string fallback) const {
    const auto* v = raw(key);
    return v == nullptr ? std::move(fallback) : unescape_value(*v);
}

std::vector<std::string> Record::get_list(std::string_view key) const {
    const auto* v = raw(key);
    if (v == nullptr) fail("missing field '" + std::string(key) + "'");
    return split_list(*v);
}

long long Record::get_int(std::string_view key) const {
    const auto text = get(key);
    long long value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail("field '" + std::string(key) + "' is not an integer: '" + text + "'");
    return value;
}

double Record::get_double(std::string_view key) const {
    const auto text = get(key);
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        fail("field '" + std::string(key) + "' is not a number: '" + text + "'");
    }
}

bool Record::get_bool(std::string_view key) const {
    const auto text = to_lower(get(key));
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    fail("field '" + std::string(key) + "' is not a boolean: '" + text + "'");
}

std::string escape_value(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '|': out += "\\|"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_value(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '\\' || i + 1 == raw.size()) {
            out.push_back(raw[i]);
            continue;
        }
        const char n = raw[++i];
        switch (n) {
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: out.push_back(n);
        }
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out.push_back('|');
        out += escape_value(items[i]);
    }
    return out;
}

std::vector<std::string> split_list(std::string_view raw) {
    std::vector<std::string> items;
    if (raw.empty()) return items;
    std::size_t start = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\') {
            ++i;
        } else if (raw[i] == '|') {
            items.push_back(unescape_value(raw.substr(start, i - start)));
            start = i + 1;
        }
    }
    items.push_back(unescape_value(raw.substr(start)));
    return items;
}

RecordFile read_records(std::istream& in, std::string_view expected_format, const std::string& source) {
    RecordFile file;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.front() == '#') continue;
        if (!have_header) {
            const std::string prefix = "format=";
            if (line.rfind(prefix, 0) != 0) throw ParseError(source, line_no, "expected 'format=" + std::string(expected_format) + "' header");
            file.format = trim(line.substr(prefix.size()));
            if (file.format != expected_format) {
                throw ParseError(source, line_no,
                                 "unsupported format '" + file.format + "', expected '" + std::string(expected_format) + "'");
            }
            have_header = true;
            continue;
        }
        Record record(source, line_no);
        std::size_t start = 0;
        while (start <= line.size()) {
            auto tab = line.find('\t', start);
            if (tab == std::string::npos) tab = line.size();
            const std::string_view part(line.data() + start, tab - start);
            if (!part.empty()) {
                const auto eq = part.find('=');
                if (eq == std::string_view::npos || eq == 0) {
                    throw ParseError(source, line_no, "malformed field '" + std::string(part) + "', expected key=value");
                }
                record.add(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1)));
            }
            start = tab + 1;
        }
        file.records.push_back(std::move(record));
    }
    if (in.bad()) throw Error("I/O error while reading " + source);
    if (!have_header) throw ParseError(source, line_no == 0 ? 1 : line_no, "missing 'format=" + std::string(expected_format) + "' header");
    return file;
}

RecordFile read_record_file(const std::filesystem::path& path, std::string_view expected_format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return read_records(in, expected_format, path.string());
}

RecordWriter::RecordWriter(std::ostream& out, std::string_view format) : out_(out) {
    out_ << "format=" << format << '\n';
}

RecordWriter& RecordWriter::field(std::string_view key, std::string_view value) {
    if (!first_field_) out_ << '\t';
    out_ << key << '=' << escape_value(value);
    first_field_ = false;
    return *this;
}

RecordWriter& RecordWriter::field(std::string_view key, long long value) { return field(key, std::to_string(value)); }

RecordWriter& RecordWriter::list(std::string_view key, const std::vector<std::string>& items) {
    if (!first_field_) out_ << '\t';
    out_ << key << '=' << join_list(items);
    first_field_ = false;
    return *this;
}

void RecordWriter::end_record() {
    out_ << '\n';
    first_field_ = true;
}

}  // namespace qgen
