#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ite {

/// Invalid configuration value or unknown key (CLI exit code 3).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Flat `key = value` configuration. Blank lines and text after `#` are
 * ignored; later assignments override earlier ones. Lists are comma separated.
 */
class Config {
public:
    Config() = default;

    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }

    [[nodiscard]] const std::string& get_string(const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& key) const;
    [[nodiscard]] double get_positive(const std::string& key) const;
    [[nodiscard]] std::uint64_t get_uint(const std::string& key) const;
    [[nodiscard]] bool get_bool(const std::string& key) const;
    /// Empty value gives an empty list.
    [[nodiscard]] std::vector<double> get_list(const std::string& key) const;

    /// Sorted `key = value` lines; parse(to_text()) round-trips.
    [[nodiscard]] std::string to_text() const;

    [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace ite
