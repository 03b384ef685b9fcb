#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "oqsim/experiments.hpp"

using namespace oqsim;

int main(int argc, char** argv) {
    CLI::App app{"oqsim - batch experiments for linear-optical quantum computing constructions"};

    std::string experiment;
    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    long trials = 0;
    std::vector<std::string> param_flags;
    bool list = false;

    app.add_option("--experiment,-e", experiment, "experiment name");
    app.add_option("--config,-c", config_path, "JSON config file (flags override)");
    app.add_option("--seed,-s", seed, "64-bit master seed");
    app.add_option("--trials,-t", trials, "number of trials");
    app.add_option("--out,-o", out_path, "output path (default: stdout)");
    app.add_option("--format,-f", format, "output format: json or csv");
    app.add_option("--param,-p", param_flags, "experiment parameter key=value (repeatable)");
    app.add_flag("--list", list, "list available experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list) {
        for (const auto& name : experiment_names()) std::cout << name << "\n";
        return 0;
    }

    try {
        ExperimentConfig config;
        if (!config_path.empty()) config = config_from_json_file(config_path);
        if (!experiment.empty()) config.name = experiment;
        if (app.count("--seed")) config.seed = seed;
        if (app.count("--trials")) config.trials = trials;
        if (!out_path.empty()) config.out_path = out_path;
        if (!format.empty()) config.format = format;
        for (const std::string& kv : param_flags) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw InvalidParams("--param expects key=value, got '" + kv + "'");
            config.params[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        if (config.name.empty())
            throw InvalidParams("no experiment selected; use --experiment or a config file");

        ResultRecord record = run_experiment(config);
        emit_record(record, config);
        std::cerr << config.name << ": done in " << record.wall_time_ms << " ms\n";
        return 0;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const UnknownExperiment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
