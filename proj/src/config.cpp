#include "isingc/config.hpp"

#include "isingc/error.hpp"

#include <charconv>
#include <sstream>

namespace isingc {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::parse, "config key '" + key + "' has malformed value '" + value + "'");
}

}  // namespace

Config parse_config(std::string_view text) {
  Config config;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty config key");
    config[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return config;
}

int config_int(const Config& c, const std::string& key, int fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  std::size_t used = 0;
  try {
    int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  bad_value(key, it->second);
}

std::uint64_t config_uint64(const Config& c, const std::string& key, std::uint64_t fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  const auto& text = it->second;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  bad_value(key, text);
}

double config_double(const Config& c, const std::string& key, double fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  std::size_t used = 0;
  try {
    double v = std::stod(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  bad_value(key, it->second);
}

std::string config_string(const Config& c, const std::string& key, const std::string& fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

std::vector<Rational> config_rationals(const Config& c, const std::string& key, std::vector<Rational> fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  std::vector<Rational> out;
  std::istringstream in(it->second);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(parse_rational(item));
    } catch (const Error&) {
      bad_value(key, it->second);
    }
  }
  return out;
}

std::vector<double> config_doubles(const Config& c, const std::string& key, std::vector<double> fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      bad_value(key, it->second);
    }
    if (used != item.size()) bad_value(key, it->second);
  }
  return out;
}

}  // namespace isingc
