#include "ffem/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <limits>
#include <map>
#include <thread>

namespace ffem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<StressSample> midspan_stress(const Model& model, const SolutionField& sol, double q0, bool nonlinear,
                                         int points) {
    const BeamSpec& spec = model.spec();
    const double xm = 0.5 * spec.L;
    const NonlocalRow row = nonlocal_B_row(xm, model.mesh(), model.params(), model.op().rule());
    const double dw = row.apply(RowKind::w, sol.state);
    StrainState strain;
    strain.x = xm;
    strain.eps0 = row.apply(RowKind::u, sol.state) + (nonlinear ? 0.5 * dw * dw : 0.0);
    strain.kappa = -row.apply(RowKind::theta, sol.state);
    std::vector<StressSample> out;
    for (int i = 0; i < points; ++i) {
        const double x3 = std::clamp(-0.5 * spec.h + spec.h * i / (points - 1), -0.5 * spec.h, 0.5 * spec.h);
        const double theta = model.loads().thermal.value(xm, x3, spec);
        StressSample s{x3, beam_axial_stress(strain, x3, theta, spec), kNaN};
        if (q0 != 0.0) s.normalized = normalized_stress(s.sigma, q0, spec);
        out.push_back(s);
    }
    return out;
}

std::vector<std::string> config_metadata(const RunConfig& config, bool reproducible) {
    std::vector<std::string> m;
    if (!reproducible) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        m.push_back(std::string("generated = ") + buf);
    }
    const auto echo = echo_config(config);
    m.insert(m.end(), echo.begin(), echo.end());
    return m;
}

std::vector<std::string> case_metadata(const RunReport& r, const CaseResult& c, bool reproducible) {
    std::vector<std::string> m = config_metadata(r.config, reproducible);
    m.push_back("case.alpha = " + format_number(c.point.alpha));
    m.push_back("case.l_f = " + format_number(c.point.l_f));
    m.push_back("case.q0 = " + format_number(c.point.q0));
    m.push_back("case.theta = " + format_number(c.point.theta));
    m.push_back("case.Ne = " + std::to_string(c.elements));
    if (c.solution) {
        m.push_back("case.newton_iterations = " + std::to_string(c.solution->iterations));
        m.push_back("case.status = ok");
    } else {
        m.push_back("case.status = failed: " + c.error);
    }
    return m;
}

std::string indexed(const std::string& stem, std::size_t i, std::size_t n) {
    return n == 1 ? stem + ".csv" : stem + "_" + std::to_string(i + 1) + ".csv";
}

}  // namespace

bool RunReport::any_failure() const {
    return std::any_of(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.solution; });
}

CaseResult run_case(const RunConfig& config, const GridPoint& point) {
    CaseResult res;
    res.point = point;
    try {
        const Model model = build_model(config, point);
        res.elements = model.mesh().elements();
        SolutionField sol = newton_raphson(model, config.solver);
        if (config.output.stress) {
            res.stress = midspan_stress(model, sol, point.q0, config.solver.mode == SolveMode::nonlinear,
                                        config.output.stress_points);
        }
        res.solution = std::move(sol);
    } catch (const Error& e) {
        res.error = e.what();
    }
    return res;
}

RunReport run_grid(const RunConfig& config, unsigned threads) {
    RunReport report;
    report.config = config;
    const std::vector<GridPoint> pts = grid(config);
    report.cases.resize(pts.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, pts.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pts.size(); i = next++) report.cases[i] = run_case(config, pts[i]);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

ResultTable displacement_table(const RunReport& r, std::size_t index, bool reproducible) {
    const CaseResult& c = r.cases.at(index);
    ResultTable t;
    t.metadata = case_metadata(r, c, reproducible);
    t.columns = {"x1_m", "u0_m", "w0_m", "dw0dx1"};
    if (c.solution) {
        const SolutionField& s = *c.solution;
        for (int i = 0; i < s.nodes(); ++i) t.rows.push_back({s.x[i], s.u0(i), s.w0(i), s.slope(i)});
    }
    return t;
}

ResultTable stress_table(const RunReport& r, std::size_t index, bool reproducible) {
    const CaseResult& c = r.cases.at(index);
    ResultTable t;
    t.metadata = case_metadata(r, c, reproducible);
    t.metadata.push_back("stress.x1 = " + format_number(0.5 * r.config.spec.L));
    if (c.point.q0 == 0.0) t.metadata.push_back("stress.normalization = undefined (q0 = 0)");
    t.columns = {"x3_m", "sigma11_Pa", "sigma11_normalized"};
    for (const auto& s : c.stress) t.rows.push_back({s.x3, s.sigma, s.normalized});
    return t;
}

std::vector<NamedTable> sweep_tables(const RunReport& r, bool reproducible) {
    const std::vector<std::string> swept = swept_parameters(r.config);
    std::string param = r.config.output.sweep_parameter;
    if (param.empty()) param = swept.empty() ? "alpha" : swept.back();

    // Group points by the values of the other swept parameters, in first-seen order.
    std::vector<std::vector<double>> keys;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
        std::vector<double> key;
        for (const auto& name : swept) {
            if (name != param) key.push_back(grid_value(r.cases[i].point, name));
        }
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            members.emplace_back();
            it = keys.end() - 1;
        }
        members[it - keys.begin()].push_back(i);
    }

    if (keys.empty()) {
        keys.emplace_back();
        members.emplace_back();
    }

    std::vector<NamedTable> out;
    for (std::size_t g = 0; g < keys.size(); ++g) {
        ResultTable t;
        t.metadata = config_metadata(r.config, reproducible);
        t.metadata.push_back("sweep.parameter = " + param);
        std::size_t k = 0;
        for (const auto& name : swept) {
            if (name != param && k < keys[g].size()) {
                t.metadata.push_back("sweep.fixed." + name + " = " + format_number(keys[g][k++]));
            }
        }
        t.columns = {"param_name", "param_value", "max_w0_m", "max_u0_m", "newton_iters_total"};
        for (std::size_t i : members[g]) {
            const CaseResult& c = r.cases[i];
            const double v = grid_value(c.point, param);
            if (c.solution) {
                t.rows.push_back({param, v, c.solution->max_abs_w(), c.solution->max_abs_u(),
                                  std::to_string(c.solution->iterations)});
            } else {
                t.rows.push_back({param, v, kNaN, kNaN, std::string("nan")});
            }
        }
        out.push_back({indexed("sweep", g, keys.size()), std::move(t)});
    }
    return out;
}

std::vector<std::string> write_outputs(const RunReport& r, const std::string& directory, bool reproducible,
                                       bool profiles, bool force_sweep) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError(directory, "cannot create output directory: " + ec.message());
    std::vector<std::string> written;
    auto emit = [&](const std::string& file, const ResultTable& t) {
        const std::string path = (std::filesystem::path(directory) / file).string();
        write_csv(t, path);
        written.push_back(path);
    };
    const OutputConfig& o = r.config.output;
    const std::size_t n = r.cases.size();
    if (profiles && o.displacement) {
        for (std::size_t i = 0; i < n; ++i) emit(indexed("displacement", i, n), displacement_table(r, i, reproducible));
    }
    if (profiles && o.stress) {
        for (std::size_t i = 0; i < n; ++i) emit(indexed("stress", i, n), stress_table(r, i, reproducible));
    }
    if (force_sweep || (o.sweep && !swept_parameters(r.config).empty())) {
        for (const auto& nt : sweep_tables(r, reproducible)) emit(nt.file, nt.table);
    }
    return written;
}

}  // namespace ffem
