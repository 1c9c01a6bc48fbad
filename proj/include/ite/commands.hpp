#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ite/config.hpp"
#include "ite/output.hpp"

namespace ite {

struct ConfigKey {
    std::string name;
    std::string default_value;
    std::string help;
};

struct CommandOutput {
    CsvTable table;
    nlohmann::json headline;
    std::string report;  // optional human-readable block
};

/**
 * One CLI subcommand: its configuration keys with defaults, its fixed CSV
 * header, and the function that runs it on a resolved configuration.
 */
struct CommandSpec {
    std::string group;
    std::string name;
    std::string summary;
    std::vector<ConfigKey> keys;
    std::vector<std::string> csv_header;
    CommandOutput (*run)(const Config&);

    [[nodiscard]] std::string full_name() const { return name.empty() ? group : group + " " + name; }
};

const std::vector<CommandSpec>& command_table();

/// nullptr when there is no such command.
const CommandSpec* find_command(std::string_view group, std::string_view name);

/// Defaults, then the file, then explicit overrides. Unknown keys raise ConfigError.
Config resolve_config(const CommandSpec& spec, const Config& file, const std::map<std::string, std::string>& overrides);

/// Runs the command and checks its CSV header against the documented schema.
/// std::invalid_argument from the model layer is reported as ConfigError.
CommandOutput run_command(const CommandSpec& spec, const Config& resolved);

struct ReplayResult {
    bool matches = false;
    std::string expected;
    std::string actual;
};

/// Re-runs the command recorded in a manifest and compares the CSV checksum.
ReplayResult replay_manifest(const nlohmann::json& manifest);

}  // namespace ite
