#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "gsdr/experiment.hpp"

#ifndef GSDR_DATA_DIR
#define GSDR_DATA_DIR "data"
#endif

namespace gsdr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string ingest_message(const std::filesystem::path& path, std::size_t line,
                           const std::string& what) {
  if (line == 0) return path.string() + ": " + what;
  return path.string() + ":" + std::to_string(line) + ": " + what;
}

}  // namespace

std::filesystem::path bundled_faithful_path() {
  return std::filesystem::path(GSDR_DATA_DIR) / "faithful_eruptions.txt";
}

IngestError::IngestError(const std::filesystem::path& path, std::size_t line,
                         const std::string& what)
    : std::runtime_error(ingest_message(path, line, what)), line_(line) {}

std::vector<double> ingest_series(const std::filesystem::path& path,
                                  std::optional<std::size_t> column) {
  std::ifstream in(path);
  if (!in) throw IngestError(path, 0, "cannot open file");

  std::vector<double> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view field = line;
    if (column) {
      std::size_t start = 0;
      for (std::size_t c = 0; c < *column; ++c) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
          throw IngestError(path, line_no, "missing column " + std::to_string(*column));
        }
        start = comma + 1;
      }
      field = line.substr(start, line.find(',', start) - start);
      field = trim(field);
    }

    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
      throw IngestError(path, line_no, "not a finite number: '" + std::string(field) + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw IngestError(path, 0, "no data values");
  return out;
}

}  // namespace gsdr
