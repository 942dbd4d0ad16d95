#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sch {

// exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 3
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 4
struct VerdictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips an IEEE double; all CSV and
// text output goes through this so reruns are byte-identical.
std::string format_double(double v);

std::string hex64(std::uint64_t v);

// CSV with fixed column order and format_double cells.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
  void row(std::span<const double> values);
  void close();
  ~CsvWriter();

 private:
  std::string buffer_;
  std::filesystem::path path_;
  std::size_t columns_ = 0;
  bool open_ = true;
};

// flat little-endian doubles, row-major
void write_f64(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

bool files_identical(const std::filesystem::path& a, const std::filesystem::path& b);

} // namespace sch
