#include "cyberevo/kv_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cyberevo {

std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_int(std::string_view text, std::string_view what) {
    text = trim(text);
    long long value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw Error("expected an integer for " + std::string(what) + ", got '" + std::string(text) + "'");
    return value;
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(trim(text));
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size())
        throw Error("expected a number for " + std::string(what) + ", got '" + s + "'");
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string_view origin) {
    KeyValueConfig cfg;
    cfg.origin_ = std::string(origin);
    std::size_t line_no = 0;
    for (std::string_view raw : split(text, '\n')) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(cfg.origin_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw Error(cfg.origin_ + ":" + std::to_string(line_no) + ": empty key");
        if (cfg.entries_.contains(key))
            throw Error(cfg.origin_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
        cfg.entries_.emplace(key, std::string(trim(line.substr(eq + 1))));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) { return parse(read_file(path), path); }

bool KeyValueConfig::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_[it->first] = true;
    return it->second;
}

std::string KeyValueConfig::get_string(std::string_view key, std::string fallback) const {
    auto v = get(key);
    return v ? *v : std::move(fallback);
}

long long KeyValueConfig::get_int(std::string_view key, long long fallback) const {
    auto v = get(key);
    return v ? parse_int(*v, origin_ + ": " + std::string(key)) : fallback;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
    auto v = get(key);
    return v ? parse_double(*v, origin_ + ": " + std::string(key)) : fallback;
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw Error(origin_ + ": expected a boolean for " + std::string(key) + ", got '" + *v + "'");
}

std::vector<long long> KeyValueConfig::get_int_list(std::string_view key, std::vector<long long> fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::vector<long long> out;
    for (auto part : split(*v, ',')) out.push_back(parse_int(part, origin_ + ": " + std::string(key)));
    return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : entries_)
        if (!used_.contains(key)) out.push_back(key);
    return out;
}

} // namespace cyberevo
