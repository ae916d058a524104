#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bnf {

// Round-trip-exact decimal form of a double (17 significant digits,
// locale independent).
std::string format_double(double value);

// Writes a CSV file with the given header and numeric rows, formatting every
// value with format_double. Throws ConfigError when the file cannot be
// opened or a row width disagrees with the header.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace bnf
