#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace penrisk::cli {

// Everything a subcommand needs, defaulted to the reference configuration
// (age 40, retirement 65, 4% p.a.). The parser fills this from flags and
// an optional key = value config file, flags winning.
struct RunConfig {
    std::string table_path;
    double delta = 0.04;
    double age = 40.0;
    double retire = 65.0;

    std::vector<double> ratings = {0.0};  // 0 = deterministic, r > 0 = two-point
    std::string scenarios;                // optional "r:w,r:w,..." custom basis

    double alpha = 0.05;
    std::vector<double> k_values = {1.0, 2.0, 5.0, 10.0, 20.0};

    std::string n_grid_text;      // "a:b:step" ranges and/or comma values
    std::string k_grid_text;      // allocate sweep over k
    std::string alpha_grid_text;  // allocate sweep over alpha
    std::string benefits_path;
    bool tier_requested = false;  // set when --alpha/--k were given explicitly

    std::uint64_t paths = 1000000;
    std::uint64_t seed = 1;
    bool antithetic = false;
    std::uint32_t chunk_size = 1024;
    bool serial = false;
    std::string dump_paths_file;

    std::string out_dir = ".";
    std::string format = "csv";
};

// "a:b:step" and comma-separated values; sorted, deduplicated.
std::vector<std::int64_t> parse_n_grid(const std::string& text);

int cmd_vco_curve(const RunConfig& config);
int cmd_exec_vco(const RunConfig& config);
int cmd_allocate(const RunConfig& config);
int cmd_simulate(const RunConfig& config);

// Full argument parsing and dispatch. Exit codes: 0 success, 2 config
// error, 3 data error.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace penrisk::cli
