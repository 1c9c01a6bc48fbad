// itesim: command-line front end for the erasure simulators.
//
// Every run writes a CSV (header + one row per grid point), a manifest next to
// it, and a JSON summary on standard output. Exit codes: 0 success, 2 usage
// error, 3 configuration error, 4 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ite/commands.hpp"
#include "ite/config.hpp"
#include "ite/output.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct LeafOptions {
    const ite::CommandSpec* spec = nullptr;
    CLI::App* app = nullptr;
    std::string config_file;
    std::string out;
    std::vector<std::string> assignments;
    std::map<std::string, std::string> flag_values;
};

std::string dashed(std::string key) {
    for (char& ch : key) {
        if (ch == '_') ch = '-';
    }
    return key;
}

fs::path default_output(const ite::CommandSpec& spec) {
    const char* dir = std::getenv("ITE_OUTPUT_DIR");
    std::string file = spec.name.empty() ? spec.group : spec.group + "-" + spec.name;
    return fs::path(dir && *dir ? dir : ".") / (file + ".csv");
}

int run_leaf(const LeafOptions& leaf) {
    const ite::CommandSpec& spec = *leaf.spec;
    std::map<std::string, std::string> overrides;
    for (const auto& a : leaf.assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw ite::ConfigError("--set expects key=value, got '" + a + "'");
        overrides[a.substr(0, eq)] = a.substr(eq + 1);
    }
    for (const auto& [k, v] : leaf.flag_values) {
        if (leaf.app->count("--" + dashed(k)) > 0) overrides[k] = v;
    }
    const ite::Config file = leaf.config_file.empty() ? ite::Config{} : ite::Config::load(leaf.config_file);
    const ite::Config resolved = ite::resolve_config(spec, file, overrides);

    const ite::CommandOutput out = ite::run_command(spec, resolved);
    const std::string csv = out.table.to_string();
    const fs::path csv_path = leaf.out.empty() ? default_output(spec) : fs::path(leaf.out);
    if (csv_path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(csv_path.parent_path(), ec);
    }
    ite::write_text_file(csv_path, csv);
    const std::string sum = ite::checksum(csv);
    const fs::path manifest_path = csv_path.string() + ".manifest.json";
    const auto manifest = ite::make_manifest(spec.full_name(), resolved.values(), {{csv_path.filename().string(), sum}});
    ite::write_text_file(manifest_path, manifest.dump(2) + "\n");

    if (!out.report.empty()) std::cerr << out.report;
    nlohmann::json summary;
    summary["command"] = spec.full_name();
    summary["config"] = resolved.values();
    summary["csv"] = csv_path.string();
    summary["manifest"] = manifest_path.string();
    summary["checksum"] = sum;
    summary["rows"] = out.table.rows();
    summary["headline"] = out.headline;
    std::cout << summary.dump(2) << "\n";

    if (spec.group == "verify" && !out.headline.value("all_passed", false)) return kExitRuntime;
    return 0;
}

int run_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ite::ConfigError("cannot read manifest " + path);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ite::ConfigError("manifest " + path + " is not valid JSON: " + e.what());
    }
    const auto r = ite::replay_manifest(manifest);
    std::cout << nlohmann::json{{"manifest", path}, {"matches", r.matches}, {"expected", r.expected}, {"actual", r.actual}}
                     .dump(2)
              << "\n";
    return r.matches ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"itesim: information-theoretic erasure simulator"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<LeafOptions>> leaves;
    std::map<std::string, CLI::App*> groups;
    for (const auto& spec : ite::command_table()) {
        CLI::App* parent = nullptr;
        if (spec.name.empty()) {
            parent = app.add_subcommand(spec.group, spec.summary);
        } else {
            auto& g = groups[spec.group];
            if (!g) {
                g = app.add_subcommand(spec.group, spec.group + " experiments");
                g->require_subcommand(1);
            }
            parent = g->add_subcommand(spec.name, spec.summary);
        }
        auto leaf = std::make_unique<LeafOptions>();
        leaf->spec = &spec;
        leaf->app = parent;
        parent->add_option("--config", leaf->config_file, "key = value configuration file");
        parent->add_option("--out", leaf->out, "CSV output path");
        parent->add_option("--set", leaf->assignments, "override a configuration key (key=value)");
        for (const auto& key : spec.keys) {
            parent->add_option("--" + dashed(key.name), leaf->flag_values[key.name], key.help + " [" + key.default_value + "]");
        }
        leaves.push_back(std::move(leaf));
    }
    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "re-run a manifest and compare output checksums");
    replay->add_option("manifest", replay_path, "manifest JSON written next to a CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*replay) return run_replay(replay_path);
        for (const auto& leaf : leaves) {
            if (*leaf->app) return run_leaf(*leaf);
        }
        std::cerr << app.help();
        return kExitUsage;
    } catch (const ite::ConfigError& e) {
        std::cerr << "itesim: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "itesim: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "itesim: " << e.what() << "\n";
        return kExitRuntime;
    }
}
