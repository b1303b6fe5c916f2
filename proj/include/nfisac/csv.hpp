#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace nfisac {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Appends comma-separated fields and a trailing '\n'.
class CsvRow {
 public:
  CsvRow& operator<<(double v) { return field(format_double(v)); }
  CsvRow& operator<<(std::size_t v) { return field(std::to_string(v)); }
  CsvRow& operator<<(int v) { return field(std::to_string(v)); }
  CsvRow& operator<<(std::string_view v) { return field(std::string(v)); }
  CsvRow& operator<<(const char* v) { return field(v); }
  std::string str() const { return line_ + "\n"; }

 private:
  CsvRow& field(const std::string& s) {
    if (!first_) line_ += ',';
    line_ += s;
    first_ = false;
    return *this;
  }
  std::string line_;
  bool first_ = true;
};

}  // namespace nfisac
