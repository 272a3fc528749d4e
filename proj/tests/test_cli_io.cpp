#include "ffem/runner.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ffem;

namespace {

const char* kMinimal = R"({
  "beam": {"L": 1.0, "b": 1.0, "h": 0.01},
  "fractional": {"alpha": 1.0, "l_f": 0.2},
  "loads": {"q0": 1e4},
  "bcs": {"left": "pinned", "right": "pinned"}
})";

std::string with(const std::string& section) {
    return std::string(R"({
  "beam": {"L": 1.0, "b": 1.0, "h": 0.01},
  "bcs": {"left": "pinned", "right": "pinned"},
)") + section + "}";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("ffem_cli_io_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FFEM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const RunConfig c = parse_config(kMinimal);
    CHECK(c.spec.E == 70e9);
    CHECK(c.spec.alpha0 == 23e-6);
    CHECK(c.spec.nu == 0.3);
    CHECK(c.solver.tol_rel_residual == 1e-8);
    CHECK(c.solver.mode == SolveMode::linear);
    CHECK_FALSE(c.elements.has_value());
    CHECK(c.n_inf == 10.0);
    CHECK(c.alpha == std::vector<double>{1.0});
    CHECK(grid(c).size() == 1);
    CHECK(build_model(c, grid(c)[0]).mesh().elements() == 50);
    const auto echo = echo_config(c);
    CHECK(std::find(echo.begin(), echo.end(), "mesh.N_inf = 1.00000000000000000e+01") != echo.end());
    CHECK(std::find(echo.begin(), echo.end(), "material.nu = 2.99999999999999989e-01") != echo.end());
}

TEST_CASE("config errors name the key") {
    auto key_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<none>");
    };
    try {
        parse_config(with(R"("fractional": {"alpha": 1.2, "l_f": 0.2}, "loads": {})"));
        FAIL("expected a range error");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "fractional.alpha");
        CHECK(std::string(e.what()).find("alpha must lie in (0,1]") != std::string::npos);
    }
    CHECK(key_of(with(R"("fractional": {"alpha": 0.8, "l_f": 0.2}, "loads": {}, "mesh": {"Ne": 10, "N_inf": 5})")) ==
          "mesh");
    CHECK(key_of(with(R"("fractional": {"alpha": 0.8, "l_f": 0.2}, "loads": {"q": 1})")) == "loads.q");
    CHECK(key_of(with(R"("fractional": {"alpha": 0.8}, "loads": {})")) == "fractional.l_f");
    CHECK(key_of(with(R"("fractional": {"alpha": [], "l_f": 0.2}, "loads": {})")) == "fractional.alpha");
    CHECK(key_of(with(R"("fractional": {"alpha": 0.8, "l_f": 0.2}, "loads": {}, "solver": {"mode": "fast"})")) ==
          "solver.mode");
    CHECK(key_of(R"({"beam": {"L": 1, "b": 1, "h": 0.01}, "fractional": {"alpha": 1, "l_f": 0.1},
                   "loads": {}, "bcs": {"left": "hinged", "right": "free"}})") == "bcs.left");
    CHECK(key_of("{not json") == "");
    CHECK(key_of(with(R"("fractional": {"alpha": 0.8, "l_f": 0.2}, "loads": {}, "mesh": {"Ne": 1})")) == "mesh.Ne");
}

TEST_CASE("csv formatting and round trip") {
    ResultTable t;
    t.metadata = {"note = test"};
    t.columns = {"name", "a", "b"};
    t.rows = {{std::string("x"), 0.1, -1.0 / 3.0}, {std::string("y"), 1e-300, 6.02214076e23}};
    const auto dir = scratch("roundtrip");
    const std::string path = (dir / "t.csv").string();
    write_csv(t, path);
    const ResultTable back = read_csv(path);
    CHECK(back.metadata == t.metadata);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back.rows[i][j] == t.rows[i][j]);
    CHECK(format_number(0.1) == "1.00000000000000006e-01");
    CHECK_THROWS_AS(write_csv(t, (dir / "missing" / "t.csv").string()), IoError);
}

TEST_CASE("empty sweep writes a header-only table") {
    RunReport empty;
    empty.config = parse_config(kMinimal);
    const auto tables = sweep_tables(empty);
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].table.rows.empty());
    const std::string text = to_csv(tables[0].table);
    CHECK(text.find("param_name,param_value,max_w0_m,max_u0_m,newton_iters_total\n") != std::string::npos);
}

TEST_CASE("softening curves ordered and deterministic output") {
    const std::string cfg = with(R"(
  "fractional": {"alpha": [1.0, 0.9, 0.8], "l_f": 0.2},
  "mesh": {"Ne": 50},
  "loads": {"q0": 1e4, "thermal": {"kind": "linear_thickness", "magnitude": 10}},
  "output": {"quantities": ["displacement", "stress", "sweep"]})");
    const RunConfig c = parse_config(cfg);
    const RunReport r = run_grid(c, 3);
    REQUIRE(r.cases.size() == 3);
    CHECK_FALSE(r.any_failure());
    CHECK(r.cases[0].solution->max_abs_w() < r.cases[1].solution->max_abs_w());
    CHECK(r.cases[1].solution->max_abs_w() < r.cases[2].solution->max_abs_w());

    const auto a = scratch("det_a"), b = scratch("det_b");
    const auto files_a = write_outputs(r, a.string());
    const auto files_b = write_outputs(run_grid(c, 1), b.string());
    REQUIRE(files_a.size() == 7);
    for (std::size_t i = 0; i < files_a.size(); ++i) CHECK(slurp(files_a[i]) == slurp(files_b[i]));

    const ResultTable disp = read_csv((a / "displacement_1.csv").string());
    CHECK(disp.columns == std::vector<std::string>{"x1_m", "u0_m", "w0_m", "dw0dx1"});
    CHECK(disp.rows.size() == 51);
    const ResultTable stress = read_csv((a / "stress_1.csv").string());
    CHECK(stress.columns == std::vector<std::string>{"x3_m", "sigma11_Pa", "sigma11_normalized"});
    CHECK(stress.rows.size() == 21);
    const ResultTable sweep = read_csv((a / "sweep.csv").string());
    REQUIRE(sweep.rows.size() == 3);
    CHECK(std::get<std::string>(sweep.rows[0][0]) == "alpha");
    CHECK(std::get<double>(sweep.rows[2][1]) == 0.8);
    CHECK(std::find(sweep.metadata.begin(), sweep.metadata.end(), "sweep.parameter = alpha") != sweep.metadata.end());
}

TEST_CASE("zero-load config gives an all-zero table") {
    const RunConfig c = parse_config(with(R"("fractional": {"alpha": 0.8, "l_f": 0.2}, "loads": {})"));
    const RunReport r = run_grid(c);
    const ResultTable t = displacement_table(r, 0);
    for (const auto& row : t.rows)
        for (std::size_t j = 1; j < 4; ++j) CHECK(std::get<double>(row[j]) == 0.0);
}

TEST_CASE("two-dimensional sweep groups along the chosen parameter") {
    const RunConfig c = parse_config(with(R"(
  "fractional": {"alpha": [1.0, 0.8], "l_f": 0.2},
  "mesh": {"Ne": 20},
  "loads": {"q0": 5e4, "thermal": {"kind": "uniform", "magnitude": [0, 2, 4]}},
  "solver": {"mode": "nonlinear", "load_steps": 4})"));
    CHECK(swept_parameters(c) == std::vector<std::string>{"alpha", "theta"});
    const auto tables = sweep_tables(run_grid(c));
    REQUIRE(tables.size() == 2);
    CHECK(tables[0].file == "sweep_1.csv");
    REQUIRE(tables[0].table.rows.size() == 3);
    double prev = 0.0;
    for (const auto& row : tables[0].table.rows) {
        CHECK(std::get<double>(row[2]) > prev);
        prev = std::get<double>(row[2]);
    }
}

TEST_CASE("solver failure is recorded and the batch continues") {
    const RunConfig c = parse_config(with(R"(
  "fractional": {"alpha": 0.8, "l_f": 0.2},
  "mesh": {"Ne": 20},
  "loads": {"q0": [1e3, 5e5]},
  "solver": {"mode": "nonlinear", "load_steps": 1, "max_iters": 2})"));
    const RunReport r = run_grid(c);
    CHECK(r.any_failure());
    const auto t = sweep_tables(r);
    REQUIRE(t[0].table.rows.size() == 2);
    CHECK(std::isnan(std::get<double>(t[0].table.rows[1][2])));
}

TEST_CASE("command-line exit codes") {
    const auto dir = scratch("cli");
    const std::string good = (dir / "good.json").string();
    std::ofstream(good) << kMinimal;
    const std::string bad = (dir / "bad.json").string();
    std::ofstream(bad) << with(R"("fractional": {"alpha": 1.2, "l_f": 0.2}, "loads": {})");
    const std::string failing = (dir / "fail.json").string();
    std::ofstream(failing) << R"({"beam": {"L": 1, "b": 1, "h": 0.01}, "fractional": {"alpha": 1, "l_f": 0.2},
      "loads": {"q0": 1e4}, "bcs": {"left": "free", "right": "free"}})";

    CHECK(run_cli("validate " + good) == 0);
    CHECK(run_cli("validate " + bad) == 1);
    CHECK(run_cli("run " + good + " --out " + (dir / "out").string()) == 0);
    CHECK(std::filesystem::exists(dir / "out" / "displacement.csv"));
    CHECK(run_cli("run " + failing + " --out " + (dir / "out2").string()) == 2);
    CHECK(run_cli("run " + (dir / "absent.json").string()) == 3);
    CHECK(run_cli("run " + good + " --out /proc/forbidden") == 3);
    CHECK(run_cli("sweep " + good + " --out " + (dir / "sw").string()) == 0);
    CHECK(std::filesystem::exists(dir / "sw" / "sweep.csv"));
    CHECK(run_cli("oracle ss-udtl") == 0);
    CHECK(run_cli("oracle cc-uniform-theta-axial --theta 5 --out " + (dir / "or").string()) == 0);
    CHECK(std::filesystem::exists(dir / "or" / "oracle_cc-uniform-theta-axial_ffem.csv"));
    CHECK(run_cli("oracle nothing") == 1);
    CHECK(run_cli("frobnicate") == 1);
}
