#include "ite/output.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <boost/crc.hpp>

namespace ite {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // also folds -0
    std::array<char, 64> buf{};
    if (std::abs(x) < 1e15 && x == std::trunc(x)) {
        const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), static_cast<long long>(x));
        return std::string(buf.data(), ptr);
    }
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

void CsvTable::add_row(std::initializer_list<double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
    std::string out;
    auto append_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_line(header_);
    for (const auto& r : rows_) append_line(r);
    return out;
}

std::string checksum(const std::string& bytes) {
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    std::array<char, 9> hex{};
    std::snprintf(hex.data(), hex.size(), "%08x", crc.checksum());
    return hex.data();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::json make_manifest(const std::string& command, const std::map<std::string, std::string>& config,
                             const std::map<std::string, std::string>& output_checksums) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::array<char, 32> stamp{};
    std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    nlohmann::json m;
    m["tool"] = "itesim";
    m["version"] = ITE_VERSION;
    m["timestamp"] = stamp.data();
    m["command"] = command;
    m["config"] = config;
    m["outputs"] = output_checksums;
    return m;
}

}  // namespace ite
