#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler2d/flow.hpp"
#include "euler2d/green.hpp"
#include "euler2d/noise.hpp"
#include "euler2d/presets.hpp"

namespace euler2d {

/// Validation failure naming the offending field (exit code 2 at the CLI).
struct ConfigError : std::runtime_error {
    ConfigError(std::string field_, const std::string& message)
        : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}
    std::string field;
};

/// Flat key-value configuration with dotted sections ('#' starts a comment).
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_text(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    const std::string& raw_text() const { return raw_; }
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
    std::string raw_;
};

/// Fully validated run configuration.
struct RunConfig {
    // kernel
    GreenSplitConfig kernel_split;
    int kernel_table_n = 1024;
    int kernel_core_cells = 4;
    std::string kernel_table_path;  ///< load/store location ("" = build in memory)
    bool kernel_rebuild = false;

    // noise
    std::string noise_variant = "constant-pair";
    double noise_c = 1.0;
    std::vector<int> noise_shells{1};
    double noise_amplitude = 0.25;

    // initial vorticity
    std::string xi0_preset = "shear";
    double xi0_amplitude = 1.0;
    int xi0_degree = 3;

    // discretization
    int sim_n = 32;
    int sim_m = 4;
    SolverConfig solver;
    int driver_substeps = 1;

    // doss reduction
    int doss_grid_n = 48;

    // experiment driver
    std::string experiment = "simulate";
    std::vector<double> sweep_eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    std::uint64_t seed = 1;
    int workers = 1;

    NoiseBasis make_basis() const;
    Xi0Preset make_xi0() const;

    /// Parses and validates; throws ConfigError naming the offending field.
    static RunConfig from_file(const KeyValueFile& kv);
    void validate() const;
};

}  // namespace euler2d
