#include "euler2d/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace euler2d {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    std::ostringstream all;
    all << in.rdbuf();
    return parse_text(all.str());
}

KeyValueFile KeyValueFile::parse_text(const std::string& text) {
    KeyValueFile kv;
    kv.raw_ = text;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", "line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config", "empty key on line " + std::to_string(lineno));
        kv.entries_[key] = val;
    }
    return kv;
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(key, "not a number: '" + it->second + "'");
    }
}

int KeyValueFile::get_int(const std::string& key, int fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(key, "not an integer: '" + it->second + "'");
    }
}

std::uint64_t KeyValueFile::get_uint64(const std::string& key, std::uint64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        size_t used = 0;
        const std::uint64_t v = std::stoull(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(key, "not an unsigned integer: '" + it->second + "'");
    }
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(key, "not a boolean: '" + it->second + "'");
}

std::vector<double> KeyValueFile::get_double_list(const std::string& key,
                                                  const std::vector<double>& fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> out;
    std::istringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError(key, "bad list entry: '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

std::vector<int> KeyValueFile::get_int_list(const std::string& key,
                                            const std::vector<int>& fallback) const {
    std::vector<double> dd = get_double_list(key, {});
    if (dd.empty()) return fallback;
    std::vector<int> out;
    for (double d : dd) {
        if (std::fabs(d - std::llround(d)) > 0)
            throw ConfigError(key, "list entry is not an integer");
        out.push_back(static_cast<int>(std::llround(d)));
    }
    return out;
}

NoiseBasis RunConfig::make_basis() const {
    if (noise_variant == "constant-pair") return NoiseBasis::constant_pair(noise_c);
    return NoiseBasis::trig_shells(noise_shells, noise_amplitude);
}

Xi0Preset RunConfig::make_xi0() const {
    return xi0_by_name(xi0_preset, xi0_amplitude, seed ^ 0x9E37u, xi0_degree);
}

RunConfig RunConfig::from_file(const KeyValueFile& kv) {
    RunConfig c;
    c.kernel_split.split_time = kv.get_double("kernel.split_time", 1.0);
    c.kernel_split.fourier_cutoff = kv.get_int("kernel.fourier_cutoff", 2);
    c.kernel_split.image_cutoff = kv.get_int("kernel.image_cutoff", 12);
    c.kernel_split.tail_tolerance = kv.get_double("kernel.tail_tolerance", 1e-12);
    c.kernel_table_n = kv.get_int("kernel.table_n", 1024);
    c.kernel_core_cells = kv.get_int("kernel.core_cells", 4);
    c.kernel_table_path = kv.get_string("kernel.table_path", "");
    c.kernel_rebuild = kv.get_bool("kernel.rebuild", false);

    c.noise_variant = kv.get_string("noise.variant", "constant-pair");
    c.noise_c = kv.get_double("noise.C", 1.0);
    c.noise_shells = kv.get_int_list("noise.shells", {1});
    c.noise_amplitude = kv.get_double("noise.amplitude", 0.25);

    c.xi0_preset = kv.get_string("xi0.preset", "shear");
    c.xi0_amplitude = kv.get_double("xi0.amplitude", 1.0);
    c.xi0_degree = kv.get_int("xi0.degree", 3);

    c.sim_n = kv.get_int("sim.N", 32);
    c.sim_m = kv.get_int("sim.M", 4);
    c.solver.dt = kv.get_double("sim.dt", 1.0 / 64.0);
    c.solver.horizon = kv.get_double("sim.T", 0.25);
    c.solver.store_stride = kv.get_int("sim.store_stride", 1);
    c.driver_substeps = kv.get_int("sim.substeps", 1);
    const std::string scheme = kv.get_string("sim.scheme", "euler-maruyama");
    if (scheme == "euler-maruyama")
        c.solver.scheme = Scheme::EulerMaruyama;
    else if (scheme == "stratonovich-heun")
        c.solver.scheme = Scheme::StratonovichHeun;
    else
        throw ConfigError("sim.scheme", "expected euler-maruyama or stratonovich-heun");
    const std::string drift = kv.get_string("sim.drift", "grid-spectral");
    if (drift == "grid-spectral")
        c.solver.drift_mode = DriftMode::GridSpectral;
    else if (drift == "particle-sum")
        c.solver.drift_mode = DriftMode::ParticleSum;
    else
        throw ConfigError("sim.drift", "expected grid-spectral or particle-sum");
    c.solver.field_n = kv.get_int("sim.field_n", 0);
    c.solver.mollify_eps = kv.get_double("sim.mollify_eps", 0.0);

    c.solver.picard_max_iters = kv.get_int("picard.max_iters", 40);
    c.solver.picard_tol = kv.get_double("picard.tol", 1e-9);
    c.solver.picard_window = kv.get_double("picard.window", 0.0);
    c.solver.contraction_threshold = kv.get_double("picard.contraction_threshold", 0.8);

    c.doss_grid_n = kv.get_int("doss.grid_n", 48);
    c.experiment = kv.get_string("experiment", "simulate");
    c.sweep_eps = kv.get_double_list("sweep.eps", c.sweep_eps);
    c.seed = kv.get_uint64("seed", 1);
    c.workers = kv.get_int("workers", 1);

    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (kernel_table_n < 16) throw ConfigError("kernel.table_n", "must be >= 16");
    if (kernel_core_cells < 2) throw ConfigError("kernel.core_cells", "must be >= 2");
    try {
        kernel_split.validate();
    } catch (const std::exception& e) {
        throw ConfigError("kernel.tail_tolerance", e.what());
    }

    if (noise_variant != "constant-pair" && noise_variant != "trig-shells")
        throw ConfigError("noise.variant", "expected constant-pair or trig-shells");
    if (noise_variant == "constant-pair" && noise_c < 0.0)
        throw ConfigError("noise.C", "must be nonnegative");
    if (noise_variant == "trig-shells") {
        if (!(noise_amplitude > 0.0)) throw ConfigError("noise.amplitude", "must be positive");
        try {
            NoiseBasis basis = NoiseBasis::trig_shells(noise_shells, noise_amplitude);
            const auto chk = basis.check_a_identity(32);
            if (chk.max_deviation > 1e-10)
                throw ConfigError("noise.shells",
                                  "basis is anisotropic: a(x) deviates from C I2 by " +
                                      std::to_string(chk.max_deviation));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("noise.shells", e.what());
        }
    }

    if (xi0_preset != "constant" && xi0_preset != "shear" && xi0_preset != "random-trig" &&
        xi0_preset != "two-patch")
        throw ConfigError("xi0.preset", "unknown preset " + xi0_preset);
    if (xi0_preset == "random-trig" && xi0_degree < 1)
        throw ConfigError("xi0.degree", "must be >= 1");

    if (sim_n < 2) throw ConfigError("sim.N", "must be >= 2");
    if (sim_m < 1) throw ConfigError("sim.M", "must be >= 1");
    if (driver_substeps < 1) throw ConfigError("sim.substeps", "must be >= 1");
    try {
        solver.validate(sim_n);
    } catch (const std::exception& e) {
        throw ConfigError("sim", e.what());
    }

    if (experiment != "simulate" && experiment != "picard-trace" && experiment != "stability-sweep" &&
        experiment != "commutator-scan" && experiment != "doss-check" &&
        experiment != "kernel-build" && experiment != "lemma-suite")
        throw ConfigError("experiment", "unknown experiment " + experiment);

    for (double eps : sweep_eps) {
        if (!(eps > 0.0) || eps > 1.0) throw ConfigError("sweep.eps", "widths must lie in (0, 1]");
    }
    if (doss_grid_n < 8) throw ConfigError("doss.grid_n", "must be >= 8");
    if (workers < 1) throw ConfigError("workers", "must be >= 1");
}

}  // namespace euler2d
