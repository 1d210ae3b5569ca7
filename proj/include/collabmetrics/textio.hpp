#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace collabmetrics {

/// Prints a real with the given number of significant digits ("%.Ng").
std::string format_sig(double value, int digits);

std::string trim(std::string_view s);

// Quotes a field only when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace collabmetrics
