#include "degenum/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace degenum::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view token, int& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    const auto body = trim(line);
    if (!body.empty() && body.front() != '#') fn(line_no, body);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::vector<int> parse_json_array(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line_no = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line_no;
    throw ParseError(source, line_no, "invalid JSON");
  }
  if (!doc.is_array()) throw ParseError(source, 0, "expected a JSON array of integers");
  std::vector<int> out;
  for (const auto& v : doc) {
    if (!v.is_number_integer()) throw ParseError(source, 0, "expected a JSON array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + what
                                  : source + ": " + what),
      line_(line) {}

DegreeSequence parse_degrees(std::string_view text, const std::string& source) {
  std::vector<int> degrees;
  std::vector<int> lines;  // source line per entry, empty for JSON input
  const auto body = trim(text);
  if (!body.empty() && body.front() == '[') {
    degrees = parse_json_array(text, source);
  } else {
    for_each_line(text, [&](int line_no, std::string_view line) {
      int value = 0;
      if (!parse_int(line, value)) {
        throw ParseError(source, line_no, "expected one integer, got '" + std::string(line) + "'");
      }
      degrees.push_back(value);
      lines.push_back(line_no);
    });
  }
  if (degrees.empty()) throw ParseError(source, 0, "no degrees given");
  const int n = static_cast<int>(degrees.size());
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    if (degrees[j] < 0 || degrees[j] > n - 1) {
      throw ParseError(source, lines.empty() ? 0 : lines[j],
                       "degree " + std::to_string(degrees[j]) + " of vertex " + std::to_string(j + 1) +
                           " outside [0, " + std::to_string(n - 1) + "]");
    }
  }
  try {
    return DegreeSequence(std::move(degrees));
  } catch (const InvalidInput& e) {
    throw ParseError(source, 0, e.what());
  }
}

ForbiddenGraph parse_edge_list(std::string_view text, int n, const std::string& source) {
  std::vector<Edge> edges;
  std::vector<int> lines;
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto split = line.find_first_of(" \t,");
    if (split == std::string_view::npos) {
      throw ParseError(source, line_no, "expected two vertex numbers");
    }
    int j = 0;
    int k = 0;
    if (!parse_int(trim(line.substr(0, split)), j) || !parse_int(trim(line.substr(split + 1)), k)) {
      throw ParseError(source, line_no, "expected two vertex numbers, got '" + std::string(line) + "'");
    }
    if (j < 1 || j > n || k < 1 || k > n) {
      throw ParseError(source, line_no, "vertex out of range 1.." + std::to_string(n));
    }
    if (j == k) throw ParseError(source, line_no, "self-loop");
    edges.emplace_back(j - 1, k - 1);
    lines.push_back(line_no);
  });
  // Report duplicates with the line of the second occurrence.
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [j, k] = edges[e];
    if (j > k) std::swap(j, k);
    auto& cell = seen[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
    if (cell != 0) throw ParseError(source, lines[e], "edge listed twice");
    cell = 1;
  }
  return ForbiddenGraph(n, std::move(edges));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DegreeSequence read_degrees(const std::string& path) { return parse_degrees(read_file(path), path); }

ForbiddenGraph read_edge_list(const std::string& path, int n) {
  return parse_edge_list(read_file(path), n, path);
}

std::string format_degrees(const DegreeSequence& d) {
  std::string out;
  for (int v : d.degrees()) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::string format_edge_list(const ForbiddenGraph& x) {
  std::string out;
  for (auto [j, k] : x.edges()) {
    out += std::to_string(j + 1);
    out += ' ';
    out += std::to_string(k + 1);
    out += '\n';
  }
  return out;
}

}  // namespace degenum::io
