#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace euler2d {

/// Round-trip decimal formatting (%.17g) so reruns are byte-identical.
std::string format_double(double v);

/// Long-format CSV writer; every numeric cell goes through format_double.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void row(const std::vector<std::string>& cells);
    void row_values(const std::vector<double>& values);
    const std::string& text() const { return text_; }
    void write(const std::string& path) const;

private:
    size_t columns_;
    std::string text_;
};

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a_file(const std::string& path);

/// Writes manifest.json: config hash, seed, output file hashes, format
/// versions. Every output produced by a run must be listed.
void write_manifest(const std::string& out_dir, const std::string& config_text, std::uint64_t seed,
                    const std::vector<std::string>& output_files);

/// Machine-readable failure report (diagnostic.json) accompanying nonzero
/// exit codes.
void write_diagnostic(const std::string& out_dir, const std::string& error_type,
                      const std::string& field, const std::string& message);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace euler2d
