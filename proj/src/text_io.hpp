#pragma once

#include <cstddef>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dangerlex::detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const auto t = s.find(sep, b);
    out.push_back(s.substr(b, t == std::string_view::npos ? std::string_view::npos : t - b));
    if (t == std::string_view::npos) break;
    b = t + 1;
  }
  return out;
}

// "# key=value" -> (key, value); anything else is ignored.
inline void collect_header(std::string_view line, std::map<std::string, std::string>& into) {
  if (!line.starts_with('#')) return;
  line.remove_prefix(1);
  while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || eq == 0 || line.substr(0, eq).find(' ') != std::string_view::npos) return;
  into[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
}

inline bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace dangerlex::detail
