#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "penrisk/allocation.hpp"
#include "penrisk/montecarlo.hpp"

namespace penrisk::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

// 12 significant digits, locale-independent
std::string fmt12(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
using Row = std::vector<Cell>;

std::string cell_to_csv(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return "undefined";
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return fmt12(*d);
    return std::get<std::string>(cell);
}

json cell_to_json(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return nullptr;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    if (const auto* d = std::get_if<double>(&cell)) return std::strtod(fmt12(*d).c_str(), nullptr);
    return std::get<std::string>(cell);
}

std::string write_table(const RunConfig& config, const std::string& name,
                        const std::vector<std::string>& columns,
                        const std::vector<Row>& rows) {
    std::filesystem::create_directories(config.out_dir);
    bool as_json = config.format == "json";
    std::string path = config.out_dir + "/" + name + (as_json ? ".json" : ".csv");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write output file: " + path);

    if (as_json) {
        json array = json::array();
        for (const Row& row : rows) {
            json obj = json::object();
            for (std::size_t c = 0; c < columns.size(); ++c) {
                obj[columns[c]] = cell_to_json(row[c]);
            }
            array.push_back(std::move(obj));
        }
        out << array.dump(2) << "\n";
    } else {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
        }
        for (const Row& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << cell_to_csv(row[c]) << (c + 1 < row.size() ? ',' : '\n');
            }
        }
    }
    return path;
}

// ---------------------------------------------------------------------------
// config assembly
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) parts.push_back(token);
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + ": \"" + text + "\"");
    }
}

std::vector<double> parse_double_grid(const std::string& text, const std::string& what) {
    std::vector<double> values;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) continue;
        auto parts = split(token, ':');
        if (parts.size() == 1) {
            values.push_back(parse_double(parts[0], what));
        } else if (parts.size() == 3) {
            double start = parse_double(parts[0], what);
            double stop = parse_double(parts[1], what);
            double step = parse_double(parts[2], what);
            if (!(step > 0.0) || stop < start) {
                throw std::invalid_argument("bad range \"" + token + "\" in " + what);
            }
            for (double v = start; v <= stop + step * 1e-9; v += step) values.push_back(v);
        } else {
            throw std::invalid_argument("bad range \"" + token + "\" in " + what);
        }
    }
    if (values.empty()) throw std::invalid_argument(what + " is empty");
    return values;
}

MortalityBasis basis_for_rating(double r) {
    if (r < 0.0) {
        throw std::invalid_argument("ratings must be non-negative; r defines the "
                                    "symmetric two-point basis {+r, -r}");
    }
    return (r == 0.0) ? MortalityBasis::deterministic() : MortalityBasis::two_point(r);
}

std::vector<MortalityBasis> build_bases(const RunConfig& config) {
    std::vector<MortalityBasis> bases;
    if (!config.scenarios.empty()) {
        std::vector<MortalityScenario> scenarios;
        for (const std::string& token : split(config.scenarios, ',')) {
            auto parts = split(token, ':');
            if (parts.size() != 2) {
                throw std::invalid_argument("bad scenario \"" + token +
                                            "\"; expected r:weight");
            }
            scenarios.push_back(MortalityScenario{
                AgeRating{parse_double(parts[0], "scenario rating")},
                parse_double(parts[1], "scenario weight")});
        }
        bases.push_back(MortalityBasis::from_scenarios(std::move(scenarios)));
        return bases;
    }
    if (config.ratings.empty()) throw std::invalid_argument("no mortality basis requested");
    bases.reserve(config.ratings.size());
    for (double r : config.ratings) bases.push_back(basis_for_rating(r));
    return bases;
}

LifeTable load_table(const RunConfig& config) {
    if (config.table_path.empty()) throw std::invalid_argument("--table is required");
    LoadedTable loaded = load_life_table_file(config.table_path);
    std::cerr << "table " << loaded.table.name << ": " << loaded.report.message << "\n";
    return std::move(loaded.table);
}

std::vector<double> load_benefits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open benefits file: " + path);
    std::string line;
    if (!std::getline(in, line) || split(line, ',')[0] != "benefit") {
        throw DataError("benefits file needs the header \"benefit\"");
    }
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        try {
            values.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw DataError("benefits file row " + std::to_string(row) +
                            ": bad value \"" + line + "\"");
        }
        if (!(values.back() > 0.0)) {
            throw DataError("benefits file row " + std::to_string(row) +
                            ": amounts must be positive");
        }
    }
    if (values.empty()) throw DataError("benefits file has no rows");
    return values;
}

std::vector<std::int64_t> grid_or_default(const RunConfig& config,
                                          std::vector<std::int64_t> fallback) {
    if (config.n_grid_text.empty()) return fallback;
    return parse_n_grid(config.n_grid_text);
}

// the figure-style default: 1..1000 by 1, then up to 10000 by 100
std::vector<std::int64_t> default_figure_grid() {
    std::vector<std::int64_t> grid;
    for (std::int64_t n = 1; n <= 1000; ++n) grid.push_back(n);
    for (std::int64_t n = 1100; n <= 10000; n += 100) grid.push_back(n);
    return grid;
}

}  // namespace

std::vector<std::int64_t> parse_n_grid(const std::string& text) {
    std::vector<std::int64_t> values;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) continue;
        auto parse_one = [&](const std::string& part) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(part, &used);
                if (used != part.size()) throw std::invalid_argument(part);
                return static_cast<std::int64_t>(v);
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse N grid entry \"" + part + "\"");
            }
        };
        auto parts = split(token, ':');
        if (parts.size() == 1) {
            values.push_back(parse_one(parts[0]));
        } else if (parts.size() == 3) {
            std::int64_t start = parse_one(parts[0]);
            std::int64_t stop = parse_one(parts[1]);
            std::int64_t step = parse_one(parts[2]);
            if (step <= 0 || stop < start) {
                throw std::invalid_argument("bad N range \"" + token + "\"");
            }
            for (std::int64_t v = start; v <= stop; v += step) values.push_back(v);
        } else {
            throw std::invalid_argument("bad N range \"" + token + "\"");
        }
    }
    if (values.empty()) throw std::invalid_argument("N grid is empty");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.front() < 1) throw std::invalid_argument("N grid values must be positive");
    return values;
}

int cmd_vco_curve(const RunConfig& config) {
    if (!config.benefits_path.empty()) {
        throw std::invalid_argument("vco-curve uses homogeneous benefits; "
                                    "use exec-vco or allocate for other structures");
    }
    LifeTable table = load_table(config);
    DiscountBasis discount = make_discount_basis(config.delta);
    auto bases = build_bases(config);
    auto grid = grid_or_default(config, default_figure_grid());
    SchemeSpec spec =
        make_scheme_spec(1, config.age, config.retire, BenefitStructure::homogeneous());

    std::vector<Row> rows;
    rows.reserve(bases.size() * grid.size());
    for (const auto& basis : bases) {
        auto curve = vco_curve(spec, basis, table, discount, grid);
        for (const auto& p : curve) {
            Row row{basis.label, p.n_members, std::monostate{}, std::monostate{}};
            if (p.defined) {
                row[2] = p.vco;
                row[3] = p.systematic_vco;
            }
            rows.push_back(std::move(row));
        }
    }
    std::string path =
        write_table(config, "vco_curve", {"basis", "N", "vco", "systematic_vco"}, rows);
    std::cout << "vco-curve: wrote " << path << " (" << grid.size() << " points x "
              << bases.size() << " bases)\n";
    return 0;
}

int cmd_exec_vco(const RunConfig& config) {
    if (!config.benefits_path.empty()) {
        throw std::invalid_argument("exec-vco sweeps the two-tier structure; "
                                    "--benefits is not applicable");
    }
    LifeTable table = load_table(config);
    DiscountBasis discount = make_discount_basis(config.delta);
    auto bases = build_bases(config);
    auto grid = grid_or_default(config, default_figure_grid());

    std::vector<Row> rows;
    for (const auto& basis : bases) {
        for (double k : config.k_values) {
            SchemeSpec spec = make_scheme_spec(
                1, config.age, config.retire,
                BenefitStructure::executive_tier(config.alpha, k));
            auto curve = vco_curve(spec, basis, table, discount, grid);
            for (const auto& p : curve) {
                Row row{basis.label, k, p.n_members, std::monostate{}, std::monostate{}};
                if (p.defined) {
                    row[3] = p.vco;
                    row[4] = p.systematic_vco;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    std::string path = write_table(config, "exec_vco",
                                   {"basis", "k", "N", "vco", "systematic_vco"}, rows);
    std::cout << "exec-vco: wrote " << path << " (" << grid.size() << " points x "
              << config.k_values.size() << " k values x " << bases.size() << " bases)\n";
    return 0;
}

namespace {

Row report_row(const MortalityBasis& basis, const AllocationReport& r, double alpha,
               double k, bool tiered) {
    Row row;
    row.push_back(basis.label);
    row.push_back(r.n_members);
    row.push_back(r.n_exec);
    if (tiered) {
        row.push_back(alpha);
        row.push_back(k);
    } else {
        row.push_back(std::monostate{});
        row.push_back(std::monostate{});
    }
    row.push_back(r.total_sd);
    if (r.per_type_defined && !r.degenerate) {
        row.push_back(r.pi_norm);
        row.push_back(r.pi_exec);
        row.push_back(r.lambda_exec);
        row.push_back(r.rho_exec);
        row.push_back(r.systematic_per_norm);
        row.push_back(r.systematic_per_exec);
        row.push_back(r.idiosyncratic_per_norm);
        row.push_back(r.idiosyncratic_per_exec);
    } else {
        for (int i = 0; i < 8; ++i) row.push_back(std::monostate{});
    }
    row.push_back(r.systematic_total);
    return row;
}

const std::vector<std::string> kReportColumns = {
    "basis",          "N",       "n_exec",
    "alpha",          "k",       "total_sd",
    "pi_norm",        "pi_exec", "lambda_exec",
    "rho_exec",       "systematic_per_norm", "systematic_per_exec",
    "idiosyncratic_per_norm", "idiosyncratic_per_exec", "systematic_total"};

}  // namespace

int cmd_allocate(const RunConfig& config) {
    LifeTable table = load_table(config);
    DiscountBasis discount = make_discount_basis(config.delta);
    auto bases = build_bases(config);

    if (!config.benefits_path.empty()) {
        std::vector<double> amounts = load_benefits(config.benefits_path);
        auto n = static_cast<std::int64_t>(amounts.size());
        SchemeSpec spec = make_scheme_spec(n, config.age, config.retire,
                                           BenefitStructure::explicit_vector(amounts));
        std::vector<Row> report_rows;
        std::vector<Row> member_rows;
        for (const auto& basis : bases) {
            AllocationReport r = euler_allocation(spec, basis, table, discount);
            report_rows.push_back(report_row(basis, r, 0.0, 0.0, false));
            for (std::size_t m = 0; m < r.member_pi.size(); ++m) {
                member_rows.push_back(Row{basis.label, static_cast<std::int64_t>(m),
                                          amounts[m], r.member_pi[m]});
            }
        }
        std::string path =
            write_table(config, "allocation_report", kReportColumns, report_rows);
        std::string member_path = write_table(
            config, "allocation_members", {"basis", "member", "benefit", "pi"}, member_rows);
        std::cout << "allocate: wrote " << path << " and " << member_path << "\n";
        return 0;
    }

    double k = config.k_values.size() == 1 ? config.k_values[0] : 5.0;
    auto n_values = grid_or_default(config, {100, 500});
    auto k_grid = parse_double_grid(
        config.k_grid_text.empty() ? "1:20:1" : config.k_grid_text, "--k-grid");
    auto alpha_grid = parse_double_grid(
        config.alpha_grid_text.empty() ? "0:0.5:0.01" : config.alpha_grid_text,
        "--alpha-grid");

    std::vector<Row> report_rows;
    std::vector<Row> k_rows;
    std::vector<Row> alpha_rows;
    for (const auto& basis : bases) {
        for (std::int64_t n : n_values) {
            SchemeSpec spec = make_scheme_spec(
                n, config.age, config.retire,
                BenefitStructure::executive_tier(config.alpha, k));
            AllocationReport r = euler_allocation(spec, basis, table, discount);
            report_rows.push_back(report_row(basis, r, config.alpha, k, true));

            for (const auto& p :
                 allocation_vs_k_curve(spec, basis, table, discount, k_grid)) {
                k_rows.push_back(Row{basis.label, n, p.alpha, p.k, p.lambda_exec,
                                     p.rho_exec});
            }
            for (const auto& p :
                 allocation_vs_alpha_curve(spec, basis, table, discount, alpha_grid)) {
                alpha_rows.push_back(Row{basis.label, n, p.k, p.alpha, p.lambda_exec,
                                         p.rho_exec});
            }
        }
    }
    std::string report_path =
        write_table(config, "allocation_report", kReportColumns, report_rows);
    std::string k_path = write_table(config, "allocation_vs_k",
                                     {"basis", "N", "alpha", "k", "lambda_exec",
                                      "rho_exec"},
                                     k_rows);
    std::string alpha_path = write_table(config, "allocation_vs_alpha",
                                         {"basis", "N", "k", "alpha", "lambda_exec",
                                          "rho_exec"},
                                         alpha_rows);
    std::cout << "allocate: wrote " << report_path << ", " << k_path << ", " << alpha_path
              << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& config) {
    LifeTable table = load_table(config);
    DiscountBasis discount = make_discount_basis(config.delta);
    auto bases = build_bases(config);
    auto n_values = grid_or_default(config, {100});

    BenefitStructure benefits = BenefitStructure::homogeneous();
    bool tiered = false;
    if (!config.benefits_path.empty()) {
        std::vector<double> amounts = load_benefits(config.benefits_path);
        n_values = {static_cast<std::int64_t>(amounts.size())};
        benefits = BenefitStructure::explicit_vector(std::move(amounts));
    } else if (config.tier_requested) {
        double k = config.k_values.size() == 1 ? config.k_values[0] : 5.0;
        benefits = BenefitStructure::executive_tier(config.alpha, k);
        tiered = true;
    }

    SimulationConfig sim{config.paths, config.seed, config.antithetic, config.chunk_size};
    ExecutionMode mode = config.serial ? ExecutionMode::serial : ExecutionMode::parallel;

    if (!config.dump_paths_file.empty() && (bases.size() != 1 || n_values.size() != 1)) {
        throw std::invalid_argument("--dump-paths needs exactly one basis and one N");
    }

    std::vector<Row> rows;
    for (const auto& basis : bases) {
        for (std::int64_t n : n_values) {
            SchemeSpec spec = make_scheme_spec(n, config.age, config.retire, benefits);
            LiabilityMoments analytic = liability_moments(spec, basis, table, discount);
            AllocationReport alloc = euler_allocation(spec, basis, table, discount);
            SimulationResult result =
                run_liability_simulation(spec, basis, table, discount, sim, mode);

            auto add_row = [&](const std::string& statistic, double analytic_value,
                               double empirical, double se, bool se_ok) {
                Row row{basis.label,
                        n,
                        static_cast<std::int64_t>(config.paths),
                        static_cast<std::int64_t>(config.seed),
                        static_cast<std::int64_t>(config.chunk_size),
                        std::string(config.antithetic ? "true" : "false"),
                        statistic,
                        analytic_value,
                        empirical,
                        std::monostate{},
                        std::monostate{},
                        std::monostate{}};
                if (se_ok && se > 0.0) {
                    double z = (empirical - analytic_value) / se;
                    row[9] = se;
                    row[10] = z;
                    row[11] = std::string(std::abs(z) <= 3.0 ? "pass" : "fail");
                }
                rows.push_back(std::move(row));
            };

            const EmpiricalMoments& m = result.moments;
            add_row("mean", analytic.expected, m.mean, m.se_mean, m.se_defined);
            add_row("sd", analytic.sd, m.sd, m.se_sd, m.se_defined);
            if (analytic.vco_defined && m.vco_defined) {
                add_row("vco", analytic.vco, m.vco, m.se_vco, m.se_defined);
            }
            if (tiered && alloc.n_exec > 0) {
                const EmpiricalAllocation& e = result.allocation;
                double exec_total = static_cast<double>(alloc.n_exec) * alloc.pi_exec;
                double norm_total =
                    static_cast<double>(alloc.n_members - alloc.n_exec) * alloc.pi_norm;
                add_row("pi_exec_section", exec_total, e.pi_exec_section, e.se_pi_exec,
                        e.se_defined);
                add_row("pi_norm_section", norm_total, e.pi_norm_section, e.se_pi_norm,
                        e.se_defined);
            }

            if (!config.dump_paths_file.empty()) {
                std::filesystem::create_directories(config.out_dir);
                std::string dump_path = config.out_dir + "/" + config.dump_paths_file;
                std::ofstream dump(dump_path);
                if (!dump) throw DataError("cannot write path dump: " + dump_path);
                dump_paths(spec, basis, table, discount, sim, dump);
                std::cout << "simulate: dumped paths to " << dump_path << "\n";
            }
        }
    }

    std::string path = write_table(config, "simulation",
                                   {"basis", "N", "paths", "seed", "chunk_size",
                                    "antithetic", "statistic", "analytic", "empirical",
                                    "std_error", "z", "within_3se"},
                                   rows);
    std::cout << "simulate: wrote " << path << "\n";
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    RunConfig config;

    CLI::App app{"penrisk: mortality-risk profile of a small defined-benefit scheme"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value configuration file; flags win");

    app.add_option("--table", config.table_path, "life table CSV (age,qx)");
    app.add_option("--delta", config.delta, "continuously-compounded discount rate")
        ->capture_default_str();
    app.add_option("--age", config.age, "common member age")->capture_default_str();
    app.add_option("--retire", config.retire, "retirement age")->capture_default_str();
    app.add_option("--rating", config.ratings,
                   "age ratings r (0 = deterministic, r > 0 = two-point basis)")
        ->delimiter(',');
    app.add_option("--scenarios", config.scenarios,
                   "custom basis as r:weight[,r:weight...]");
    auto* alpha_opt =
        app.add_option("--alpha", config.alpha, "executive fraction")->capture_default_str();
    auto* k_opt = app.add_option("--k", config.k_values, "benefit multiple(s)")
                      ->delimiter(',');
    app.add_option("--n-grid", config.n_grid_text,
                   "membership sizes, e.g. 100,500 or 1:1000:1");
    app.add_option("--k-grid", config.k_grid_text, "allocate sweep over k (default 1:20:1)");
    app.add_option("--alpha-grid", config.alpha_grid_text,
                   "allocate sweep over alpha (default 0:0.5:0.01)");
    app.add_option("--benefits", config.benefits_path,
                   "explicit per-member benefits CSV (header: benefit)");
    app.add_option("--paths", config.paths, "simulation paths")->capture_default_str();
    app.add_option("--seed", config.seed, "simulation seed")->capture_default_str();
    app.add_flag("--antithetic", config.antithetic, "mirror lifetime uniforms in pairs");
    app.add_option("--chunk-size", config.chunk_size,
                   "paths per deterministic chunk")
        ->capture_default_str();
    app.add_flag("--serial", config.serial, "run the serial reference engine");
    app.add_option("--dump-paths", config.dump_paths_file,
                   "write per-path CSV (simulate only)");
    app.add_option("--out", config.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* vco = app.add_subcommand("vco-curve", "coefficient of variation versus N");
    auto* exec = app.add_subcommand("exec-vco", "vco versus N for two-tier benefits");
    auto* alloc = app.add_subcommand("allocate", "Euler risk-capital allocation");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-validation");
    for (auto* sub : {vco, exec, alloc, simulate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.tier_requested = alpha_opt->count() > 0 || k_opt->count() > 0;

    try {
        if (vco->parsed()) return cmd_vco_curve(config);
        if (exec->parsed()) return cmd_exec_vco(config);
        if (alloc->parsed()) return cmd_allocate(config);
        if (simulate->parsed()) return cmd_simulate(config);
        throw std::invalid_argument("no subcommand");
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("penrisk");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace penrisk::cli
