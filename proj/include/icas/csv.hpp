#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

namespace icas {

/// Shortest decimal that round-trips to the same double. NaN gives "nan",
/// infinities "inf" and "-inf".
std::string format_double(double v);

/// RFC 4180 writer: CRLF record separators, fields quoted when they contain a
/// comma, quote, CR or LF.
class CsvWriter {
 public:
  /// Throws std::runtime_error when the file cannot be opened.
  explicit CsvWriter(const std::filesystem::path& path);

  CsvWriter& field(std::string_view s);
  CsvWriter& field(const char* s) { return field(std::string_view(s)); }
  CsvWriter& field(double v);
  CsvWriter& field(int v);
  CsvWriter& field(long long v);
  CsvWriter& field(std::size_t v);
  /// Empty field when absent.
  CsvWriter& field(const std::optional<double>& v);
  void end_row();

  template <class... Ts>
  void row(const Ts&... values) {
    (field(values), ...);
    end_row();
  }

 private:
  void separator();
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace icas
