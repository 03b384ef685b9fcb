#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oqsim/serialize.hpp"

namespace oqsim {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Every bare invocation is reproducible: the default seed is fixed.
inline constexpr std::uint64_t kDefaultSeed = 987654321ULL;

struct ExperimentConfig {
    std::string name;
    std::uint64_t seed = kDefaultSeed;
    long trials = 1;
    std::map<std::string, std::string> params;
    std::string out_path;        // empty: stdout
    std::string format = "json";  // "json" or "csv"
};

struct ResultRecord {
    std::string experiment;
    ordered_json config_echo;  // reproduces the run exactly
    ordered_json metrics;
    std::vector<std::string> csv_lines;  // header + rows, schema fixed per experiment
    double wall_time_ms = 0.0;           // reported to the console, never serialized
};

std::vector<std::string> experiment_names();

// Runs one named experiment. Deterministic for a fixed config; rejects
// unknown experiments and unknown or malformed parameters.
ResultRecord run_experiment(const ExperimentConfig& config);

std::string record_to_json_text(const ResultRecord& record);
std::string record_to_csv_text(const ResultRecord& record);

// Serializes per config.format and writes to config.out_path or stdout.
void emit_record(const ResultRecord& record, const ExperimentConfig& config);

ExperimentConfig config_from_json_file(const std::string& path);

}  // namespace oqsim
