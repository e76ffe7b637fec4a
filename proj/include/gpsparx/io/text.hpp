#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gpsparx::io {

// Shortest round-trip decimal form (17 significant digits) so CSV files
// reload bit-exactly.
std::string format_double(double v);

// Strict full-token parse; `what` names the field in the error message.
double parse_double(std::string_view token, const char* what);
std::int64_t parse_int(std::string_view token, const char* what);

// Splits one line on commas; no quoting, fields may be empty.
std::vector<std::string_view> split_csv(std::string_view line);

// Splits on '\n', dropping a trailing '\r' per line and a final empty line.
std::vector<std::string_view> split_lines(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace gpsparx::io
