// Command-line front end: run / sweep / oracle / validate.

#include "ffem/oracle.hpp"
#include "ffem/runner.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

enum Exit { ok = 0, config_error = 1, solver_failure = 2, io_error = 3 };

int report_cases(const ffem::RunReport& report) {
    int failed = 0;
    for (const auto& c : report.cases) {
        if (!c.solution) {
            ++failed;
            std::cerr << "solve failed (alpha=" << c.point.alpha << ", l_f=" << c.point.l_f << ", q0=" << c.point.q0
                      << ", theta=" << c.point.theta << "): " << c.error << "\n";
        }
    }
    return failed ? solver_failure : ok;
}

int run_command(const std::string& path, const std::string& out_dir, bool reproducible, bool sweep_only) {
    ffem::RunConfig cfg = ffem::load_config(path);
    for (const auto& w : cfg.spec.warnings()) std::cerr << "warning: " << w << "\n";
    const ffem::RunReport report = ffem::run_grid(cfg);
    const std::string dir = out_dir.empty() ? cfg.output.directory : out_dir;
    for (const auto& p : ffem::write_outputs(report, dir, reproducible, !sweep_only, sweep_only)) {
        std::cout << p << "\n";
    }
    return report_cases(report);
}

int oracle_command(const std::string& id, double q0, double theta, int ne, const std::string& out_dir) {
    const ffem::OracleCase& c = ffem::find_oracle_case(id);
    ffem::BeamSpec spec;
    const ffem::OracleLoads loads{q0, theta};
    const ffem::Model model = ffem::oracle_model(c, spec, loads, ne);
    const ffem::SolutionField sol = ffem::solve_linear(model);
    const double reference = ffem::local_closed_form(c, spec, loads);
    double computed = 0.0;
    if (c.quantity.rfind("axial", 0) == 0) {
        const ffem::NonlocalRow row = ffem::nonlocal_B_row(0.5 * spec.L, model.mesh(), model.params(), model.op().rule());
        computed = spec.A11() * row.apply(ffem::RowKind::u, sol.state) -
                   ffem::thermal_resultants(model.loads().thermal, 0.5 * spec.L, spec).N_theta;
    } else {
        computed = sol.max_abs_w();
    }
    const double err = reference != 0.0 ? std::abs(computed - reference) / std::abs(reference) : std::abs(computed);
    const bool pass = err <= c.tolerance;
    std::printf("%s: %s\n  reference %.10e\n  f-FEM     %.10e\n  rel error %.3e (tolerance %.1e) %s\n", c.id.c_str(),
                c.quantity.c_str(), reference, computed, err, c.tolerance, pass ? "PASS" : "FAIL");

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        ffem::ResultTable closed, fem;
        closed.metadata = {"oracle.case = " + c.id, "oracle.derivation = " + c.derivation,
                           "oracle.q0 = " + ffem::format_number(q0), "oracle.theta = " + ffem::format_number(theta)};
        fem.metadata = closed.metadata;
        fem.metadata.push_back("oracle.Ne = " + std::to_string(ne));
        closed.columns = fem.columns = {"x1_m", "u0_m", "w0_m", "dw0dx1"};
        for (int i = 0; i < sol.nodes(); ++i) {
            const auto p = ffem::local_closed_form_profile(c, spec, loads, sol.x[i]);
            closed.rows.push_back({sol.x[i], p.u0, p.w0, p.slope});
            fem.rows.push_back({sol.x[i], sol.u0(i), sol.w0(i), sol.slope(i)});
        }
        const auto base = std::filesystem::path(out_dir);
        ffem::write_csv(closed, (base / ("oracle_" + c.id + "_closed_form.csv")).string());
        ffem::write_csv(fem, (base / ("oracle_" + c.id + "_ffem.csv")).string());
    }
    return pass ? ok : solver_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional-order nonlocal thermoelastic beam solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir, case_id;
    bool reproducible = true;
    double q0 = 1e4, theta = 10.0;
    int ne = 100;

    auto* run = app.add_subcommand("run", "Solve every case of a configuration and write CSV tables");
    run->add_option("config", config_path, "JSON configuration")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    run->add_flag("--reproducible,!--no-reproducible", reproducible,
                  "Omit the wall-clock metadata line (default on)");

    auto* sweep = app.add_subcommand("sweep", "Solve the sweep grid and write only the sweep tables");
    sweep->add_option("config", config_path, "JSON configuration")->required();
    sweep->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sweep->add_flag("--reproducible,!--no-reproducible", reproducible,
                    "Omit the wall-clock metadata line (default on)");

    auto* oracle = app.add_subcommand("oracle", "Compare the f-FEM at alpha = 1 with a classical closed form");
    oracle->add_option("case", case_id, "ss-udtl | cc-udtl | ss-thermal-moment | cc-uniform-theta-axial")->required();
    oracle->add_option("--q0", q0, "Uniform transverse load [N/m]")->capture_default_str();
    oracle->add_option("--theta", theta, "Temperature magnitude [K]")->capture_default_str();
    oracle->add_option("--Ne", ne, "Element count")->capture_default_str()->check(CLI::Range(2, 100000));
    oracle->add_option("--out", out_dir, "Write closed-form and f-FEM profiles here");

    auto* validate = app.add_subcommand("validate", "Parse a configuration and print the resolved values");
    validate->add_option("config", config_path, "JSON configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*run) return run_command(config_path, out_dir, reproducible, false);
        if (*sweep) return run_command(config_path, out_dir, reproducible, true);
        if (*oracle) return oracle_command(case_id, q0, theta, ne, out_dir);
        if (*validate) {
            const ffem::RunConfig cfg = ffem::load_config(config_path);
            for (const auto& line : ffem::echo_config(cfg)) std::cout << line << "\n";
            for (const auto& w : cfg.spec.warnings()) std::cerr << "warning: " << w << "\n";
            std::cout << "grid points: " << ffem::grid(cfg).size() << "\n";
            return ok;
        }
    } catch (const ffem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const ffem::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const ffem::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    } catch (const ffem::Error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return solver_failure;
    }
    return ok;
}
