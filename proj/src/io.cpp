#include "euler2d/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace euler2d {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(columns.size()) {
    std::string header;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) header += ',';
        header += columns[i];
    }
    text_ = header + "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    text_ += line + "\n";
}

void CsvWriter::row_values(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
}

void CsvWriter::write(const std::string& path) const { write_text_file(path, text_); }

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) { return fnv1a(read_text_file(path)); }

void write_manifest(const std::string& out_dir, const std::string& config_text, std::uint64_t seed,
                    const std::vector<std::string>& output_files) {
    nlohmann::json m;
    m["config_hash"] = fnv1a(config_text);
    m["seed"] = seed;
    m["versions"] = {{"manifest", 1}, {"flow_format", 1}, {"kernel_table_format", 1}};
    nlohmann::json outs = nlohmann::json::object();
    for (const std::string& f : output_files) {
        const std::string full = out_dir + "/" + f;
        outs[f] = fnv1a_file(full);
    }
    m["outputs"] = outs;
    write_text_file(out_dir + "/manifest.json", m.dump(2) + "\n");
}

void write_diagnostic(const std::string& out_dir, const std::string& error_type,
                      const std::string& field, const std::string& message) {
    nlohmann::json d;
    d["error"] = error_type;
    d["field"] = field;
    d["message"] = message;
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/diagnostic.json", d.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace euler2d
