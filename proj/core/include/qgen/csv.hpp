#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qgen {

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

/// Fixed-point rendering used by every numeric CSV cell.
std::string format_fixed(double value, int decimals = 6);

}  // namespace qgen
