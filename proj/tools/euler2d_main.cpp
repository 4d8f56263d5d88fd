#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

#include "euler2d/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stochastic 2D Euler flows on the torus: simulation and verification runs"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    int workers = 0;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "worker thread cap");
        sub->add_option("--seed", seed, "seed override");
    };

    const std::vector<std::string> experiments = {"simulate",    "picard-trace", "stability-sweep",
                                                  "commutator-scan", "doss-check", "kernel-build",
                                                  "lemma-suite"};
    for (const std::string& name : experiments) add_common(app.add_subcommand(name));

    CLI::App* sweep = app.add_subcommand("sweep", "one run per value along an axis, merged table");
    add_common(sweep);
    std::string axis;
    std::string values_csv;
    sweep->add_option("--axis", axis, "dt | N | M | eps")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();

    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "sweep") {
        std::vector<std::string> values;
        std::string item;
        for (char c : values_csv) {
            if (c == ',') {
                if (!item.empty()) values.push_back(item);
                item.clear();
            } else {
                item += c;
            }
        }
        if (!item.empty()) values.push_back(item);
        return euler2d::run_sweep_cli(config_path, out_dir, axis, values, "", workers, seed);
    }
    return euler2d::run_cli(config_path, out_dir, name, workers, seed);
}
