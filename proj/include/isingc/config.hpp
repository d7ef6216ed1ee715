#pragma once

#include "isingc/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace isingc {

/// Flat key = value settings. '#' starts a comment; later keys override earlier ones.
using Config = std::map<std::string, std::string>;

Config parse_config(std::string_view text);

/// Typed lookups; throw Error(parse) when the stored value is malformed.
int config_int(const Config& c, const std::string& key, int fallback);
std::uint64_t config_uint64(const Config& c, const std::string& key, std::uint64_t fallback);
double config_double(const Config& c, const std::string& key, double fallback);
std::string config_string(const Config& c, const std::string& key, const std::string& fallback);
/// Comma-separated list of exact rationals ("1, 1/2, 0.25").
std::vector<Rational> config_rationals(const Config& c, const std::string& key, std::vector<Rational> fallback);
/// Comma-separated list of doubles.
std::vector<double> config_doubles(const Config& c, const std::string& key, std::vector<double> fallback);

}  // namespace isingc
