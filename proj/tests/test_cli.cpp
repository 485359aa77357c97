#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "penrisk/scheme.hpp"
#include "test_helpers.hpp"

using namespace penrisk;
using penrisk::cli::parse_n_grid;
using penrisk::cli::run_cli;
using penrisk::testing::data_file;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("penrisk_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string golden(const std::string& name) {
    return slurp(fs::path(PENRISK_GOLDEN_DIR) / name);
}

int run_binary(const std::string& args) {
    std::string command = std::string(PENRISK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("n-grid parsing") {
    CHECK(parse_n_grid("100,500") == std::vector<std::int64_t>{100, 500});
    CHECK(parse_n_grid("1:5:2") == std::vector<std::int64_t>{1, 3, 5});
    CHECK(parse_n_grid("500,100,100") == std::vector<std::int64_t>{100, 500});
    CHECK(parse_n_grid("1:3:1,2:6:2") == std::vector<std::int64_t>{1, 2, 3, 4, 6});
    CHECK_THROWS_AS(parse_n_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_grid("0,5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_grid("5:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_grid("1:10:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_grid("abc"), std::invalid_argument);
}

TEST_CASE("vco-curve output matches the golden file") {
    fs::path dir = fresh_dir("vco_golden");
    int code = run_cli({"vco-curve", "--table", data_file("pma92c10_proxy.csv"),
                        "--n-grid", "10,100,500", "--rating", "0,1", "--out", dir.string()});
    REQUIRE(code == 0);
    CHECK(slurp(dir / "vco_curve.csv") == golden("vco_curve.csv"));
}

TEST_CASE("allocate output matches the golden files") {
    fs::path dir = fresh_dir("alloc_golden");
    int code = run_cli({"allocate", "--table", data_file("pma92c10_proxy.csv"),
                        "--n-grid", "100", "--alpha", "0.05", "--k", "5", "--rating", "0,1",
                        "--k-grid", "1:5:1", "--alpha-grid", "0:0.1:0.05", "--out",
                        dir.string()});
    REQUIRE(code == 0);
    CHECK(slurp(dir / "allocation_report.csv") == golden("allocation_report.csv"));
    CHECK(slurp(dir / "allocation_vs_k.csv") == golden("allocation_vs_k.csv"));
    CHECK(slurp(dir / "allocation_vs_alpha.csv") == golden("allocation_vs_alpha.csv"));
}

TEST_CASE("simulate output matches the golden file and is reproducible") {
    auto args = [&](const fs::path& dir) {
        return std::vector<std::string>{
            "simulate", "--table", data_file("pma92c10_proxy.csv"), "--n-grid", "50",
            "--alpha", "0.1",      "--k", "4", "--rating", "1", "--paths", "2048",
            "--seed",  "7",        "--out", dir.string()};
    };
    fs::path dir_a = fresh_dir("sim_golden_a");
    REQUIRE(run_cli(args(dir_a)) == 0);
    CHECK(slurp(dir_a / "simulation.csv") == golden("simulation.csv"));

    fs::path dir_b = fresh_dir("sim_golden_b");
    REQUIRE(run_cli(args(dir_b)) == 0);
    CHECK(slurp(dir_a / "simulation.csv") == slurp(dir_b / "simulation.csv"));
}

TEST_CASE("json output carries the same values") {
    fs::path dir = fresh_dir("vco_json");
    int code = run_cli({"vco-curve", "--table", data_file("pma92c10_proxy.csv"),
                        "--n-grid", "100", "--rating", "0", "--format", "json", "--out",
                        dir.string()});
    REQUIRE(code == 0);
    auto parsed = nlohmann::json::parse(slurp(dir / "vco_curve.json"));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["basis"] == "deterministic");
    CHECK(parsed[0]["N"] == 100);
    CHECK(parsed[0]["systematic_vco"] == 0.0);

    LiabilityMoments m = liability_moments(
        make_scheme_spec(100, 40.0, 65.0, BenefitStructure::homogeneous()),
        MortalityBasis::deterministic(), penrisk::testing::proxy_table(),
        make_discount_basis(0.04));
    CHECK(parsed[0]["vco"].get<double>() == doctest::Approx(m.vco).epsilon(1e-11));
}

TEST_CASE("exec-vco with k = 1 reproduces the homogeneous curve") {
    fs::path dir = fresh_dir("execvco");
    REQUIRE(run_cli({"exec-vco", "--table", data_file("pma92c10_proxy.csv"), "--n-grid",
                     "10,100", "--rating", "1", "--alpha", "0.05", "--k", "1", "--out",
                     dir.string()}) == 0);
    REQUIRE(run_cli({"vco-curve", "--table", data_file("pma92c10_proxy.csv"), "--n-grid",
                     "10,100", "--rating", "1", "--out", dir.string()}) == 0);

    // exec_vco rows: basis,k,N,vco,systematic_vco ; vco_curve: basis,N,vco,...
    std::istringstream exec_rows(slurp(dir / "exec_vco.csv"));
    std::istringstream flat_rows(slurp(dir / "vco_curve.csv"));
    std::string exec_line;
    std::string flat_line;
    std::getline(exec_rows, exec_line);  // headers
    std::getline(flat_rows, flat_line);
    while (std::getline(exec_rows, exec_line) && std::getline(flat_rows, flat_line)) {
        auto strip_k = exec_line;
        auto first_comma = strip_k.find(',');
        auto second_comma = strip_k.find(',', first_comma + 1);
        strip_k.erase(first_comma, second_comma - first_comma);
        CHECK(strip_k == flat_line);
    }
}

TEST_CASE("config file values are used and flags win") {
    fs::path dir = fresh_dir("cfgfile");
    fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "table = " << data_file("pma92c10_proxy.csv") << "\n";
        out << "n-grid = 100\n";
        out << "rating = 0\n";
        out << "delta = 0.10\n";
    }
    fs::path from_config = dir / "from_config";
    REQUIRE(run_cli({"vco-curve", "--config", cfg.string(), "--out",
                     from_config.string()}) == 0);
    fs::path overridden = dir / "overridden";
    REQUIRE(run_cli({"vco-curve", "--config", cfg.string(), "--delta", "0.04", "--out",
                     overridden.string()}) == 0);
    fs::path direct = dir / "direct";
    REQUIRE(run_cli({"vco-curve", "--table", data_file("pma92c10_proxy.csv"), "--n-grid",
                     "100", "--rating", "0", "--delta", "0.04", "--out",
                     direct.string()}) == 0);

    CHECK(slurp(overridden / "vco_curve.csv") == slurp(direct / "vco_curve.csv"));
    CHECK(slurp(from_config / "vco_curve.csv") != slurp(direct / "vco_curve.csv"));
}

TEST_CASE("path dump writes one row per path") {
    fs::path dir = fresh_dir("dump");
    REQUIRE(run_cli({"simulate", "--table", data_file("pma92c10_proxy.csv"), "--n-grid",
                     "5", "--rating", "1", "--paths", "256", "--seed", "3", "--dump-paths",
                     "paths.csv", "--out", dir.string()}) == 0);
    std::istringstream in(slurp(dir / "paths.csv"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 257);  // header + 256 paths
}

TEST_CASE("exit codes") {
    SUBCASE("success is 0") {
        fs::path dir = fresh_dir("exit0");
        CHECK(run_binary("vco-curve --table " + data_file("pma92c10_proxy.csv") +
                         " --n-grid 10 --out " + dir.string()) == 0);
    }
    SUBCASE("help is 0") { CHECK(run_binary("--help") == 0); }
    SUBCASE("missing subcommand is a config error") { CHECK(run_binary("") == 2); }
    SUBCASE("unknown flag is a config error") {
        CHECK(run_binary("vco-curve --frobnicate") == 2);
    }
    SUBCASE("missing table is a config error") {
        CHECK(run_binary("vco-curve --n-grid 10") == 2);
    }
    SUBCASE("unreadable table is a data error") {
        CHECK(run_binary("vco-curve --table /no/such/file.csv --n-grid 10") == 3);
    }
    SUBCASE("malformed table is a data error") {
        fs::path dir = fresh_dir("badtable");
        fs::path bad = dir / "bad.csv";
        std::ofstream(bad) << "age,qx\n40,0.1\n45,0.2\n";
        CHECK(run_binary("vco-curve --table " + bad.string() + " --n-grid 10") == 3);
    }
    SUBCASE("empty n-grid is a config error") {
        CHECK(run_binary("vco-curve --table " + data_file("pma92c10_proxy.csv") +
                         " --n-grid ,") == 2);
    }
    SUBCASE("bad format value is a config error") {
        CHECK(run_binary("vco-curve --table " + data_file("pma92c10_proxy.csv") +
                         " --format yaml") == 2);
    }
    SUBCASE("negative rating is a config error") {
        CHECK(run_binary("vco-curve --table " + data_file("pma92c10_proxy.csv") +
                         " --rating=-1 --n-grid 10") == 2);
    }
}
