#pragma once

#include <filesystem>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ite {

/// Output could not be written (CLI exit code 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

/// Comma-separated table with a fixed header; rendered newline-terminated.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::initializer_list<double> values);
    void add_row(std::vector<std::string> cells);

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
    [[nodiscard]] std::string to_string() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// CRC-32 of the bytes, as 8 lowercase hex digits.
std::string checksum(const std::string& bytes);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Run manifest: resolved config, tool version, timestamp and output checksums.
nlohmann::json make_manifest(const std::string& command, const std::map<std::string, std::string>& config,
                             const std::map<std::string, std::string>& output_checksums);

}  // namespace ite
