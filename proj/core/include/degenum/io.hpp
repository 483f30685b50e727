#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "degenum/graph_types.hpp"

namespace degenum::io {

/// Malformed input. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Degree file: either a JSON array of integers, or one integer per line.
/// Blank lines and lines starting with '#' are skipped.
DegreeSequence parse_degrees(std::string_view text, const std::string& source = "<degrees>");
DegreeSequence read_degrees(const std::string& path);
std::string format_degrees(const DegreeSequence& d);

/// Edge list: one "j k" pair per line, 1-indexed. Blank/'#' lines skipped.
ForbiddenGraph parse_edge_list(std::string_view text, int n, const std::string& source = "<edges>");
ForbiddenGraph read_edge_list(const std::string& path, int n);
std::string format_edge_list(const ForbiddenGraph& x);

std::string read_file(const std::string& path);

}  // namespace degenum::io
