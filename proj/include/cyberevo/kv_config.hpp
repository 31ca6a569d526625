#pragma once

#include "cyberevo/common.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyberevo {

/// `key = value` text format shared by scenario configs and experiment specs.
/// Blank lines and lines starting with '#' are ignored. Duplicate keys are an
/// error. Values keep their inner whitespace.
class KeyValueConfig {
  public:
    static KeyValueConfig parse(std::string_view text, std::string_view origin = "<config>");
    static KeyValueConfig load(const std::string& path);

    bool contains(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;

    std::string get_string(std::string_view key, std::string fallback) const;
    long long get_int(std::string_view key, long long fallback) const;
    double get_double(std::string_view key, double fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;
    /// Comma-separated integer list, e.g. "25, 50".
    std::vector<long long> get_int_list(std::string_view key, std::vector<long long> fallback) const;

    /// Keys that were never read through a getter. Lets callers reject typos.
    std::vector<std::string> unused_keys() const;

    const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return entries_; }

  private:
    std::string origin_;
    std::map<std::string, std::string, std::less<>> entries_;
    mutable std::map<std::string, bool, std::less<>> used_;
};

long long parse_int(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);
std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);
std::string read_file(const std::string& path);

} // namespace cyberevo
