#include "icas/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace icas {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

void CsvWriter::separator() {
  if (!first_) out_.put(',');
  first_ = false;
}

CsvWriter& CsvWriter::field(std::string_view s) {
  separator();
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    out_ << s;
    return *this;
  }
  out_.put('"');
  for (char c : s) {
    if (c == '"') out_.put('"');
    out_.put(c);
  }
  out_.put('"');
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(std::string_view(format_double(v))); }
CsvWriter& CsvWriter::field(int v) { return field(static_cast<long long>(v)); }
CsvWriter& CsvWriter::field(long long v) { return field(std::string_view(std::to_string(v))); }
CsvWriter& CsvWriter::field(std::size_t v) { return field(std::string_view(std::to_string(v))); }
CsvWriter& CsvWriter::field(const std::optional<double>& v) { return v ? field(*v) : field(std::string_view()); }

void CsvWriter::end_row() {
  out_ << "\r\n";
  first_ = true;
}

}  // namespace icas
