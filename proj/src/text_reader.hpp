#pragma once

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>

#include "hosb/error.hpp"

namespace hosb::detail {

// Line reader for the whitespace-separated text formats. Skips blank lines
// and lines whose first non-blank character is '#'.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      if (line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

template <typename T>
T read_field(std::istringstream& fields, const LineReader& reader, const char* name) {
  T value{};
  if (!(fields >> value)) reader.fail(std::string("expected ") + name);
  return value;
}

inline void expect_end(std::istringstream& fields, const LineReader& reader) {
  std::string extra;
  if (fields >> extra) reader.fail("unexpected trailing token '" + extra + "'");
}

}  // namespace hosb::detail
