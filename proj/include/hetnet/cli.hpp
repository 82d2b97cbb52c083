#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hetnet::cli {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitBadFlags = 2;
inline constexpr int kExitViolated = 3;

struct DetectOptions {
    std::string input_path;
    int restarts = 100;
    std::uint64_t seed = 0;
    std::optional<int> target_k;
    bool oracle = false;
    std::string out_path; // empty: stdout
    std::string format = "json"; // "json" | "csv"
};

struct SimulateOptions {
    int setting = 1;
    std::vector<double> r3_grid;
    int reps = 100;
    std::uint64_t seed = 0;
    int restarts = 100;
    int n1_per_community = 200;
    int n2_per_community = 100;
    std::string out_path; // empty: stdout
};

struct CheckOptions {
    std::string spec_path;
};

int run_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);

// "a,b,c" and "lo:step:hi" grid syntax
std::vector<double> parse_grid(const std::string& text);

} // namespace hetnet::cli
