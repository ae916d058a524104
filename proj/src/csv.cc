#include "bnf/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "bnf/errors.hpp"

namespace bnf {

std::string format_double(double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                    17);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file " + path.string());
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw ConfigError("row width does not match header in " +
                        path.string());
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out.flush()) {
    throw ConfigError("failed writing " + path.string());
  }
}

}  // namespace bnf
