#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dsmdp::experiment {

// 12 significant digits; NaN and infinities as "nan", "inf", "-inf".
std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);  // empty when absent
double parse_number(const std::string& s);  // empty -> NaN

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws io_error
  const std::string& cell(std::size_t row, const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// Fields containing a comma, quote or newline are quoted.
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace dsmdp::experiment
