#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hexwave {

/// Locale-independent rendering with 17 significant digits.
std::string format_number(double value);

/// Buffered CSV table; numeric cells are rendered with format_number.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::initializer_list<double> cells);
  void add_row(const std::vector<std::string>& cells);

  std::size_t rows() const noexcept { return rows_.size(); }
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Minimal reader for the CSV files this library writes (no quoting).
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
};

CsvData read_csv(const std::filesystem::path& path);

}  // namespace hexwave
