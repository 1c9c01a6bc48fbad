#include "ite/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ite {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, const std::string& key) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
        throw ConfigError("config key '" + key + "': '" + std::string(text) + "' is not a finite number");
    }
    return value;
}

}  // namespace

Config Config::parse(std::string_view text) {
    Config cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        cfg.set(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const std::string& Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const { return parse_double(get_string(key), key); }

double Config::get_positive(const std::string& key) const {
    const double v = get_double(key);
    if (!(v > 0.0)) throw ConfigError("config key '" + key + "' must be positive");
    return v;
}

std::uint64_t Config::get_uint(const std::string& key) const {
    const std::string_view t = trim(get_string(key));
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("config key '" + key + "': '" + std::string(t) + "' is not a non-negative integer");
    }
    return value;
}

bool Config::get_bool(const std::string& key) const {
    const std::string& v = get_string(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    std::string_view rest = get_string(key);
    if (trim(rest).empty()) return out;
    for (;;) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(rest.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::string Config::to_text() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

}  // namespace ite
