#include "ffem/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ffem {

namespace {

using json = nlohmann::json;

std::string join(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

void reject_unknown(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigError(join(section, it.key()), "unknown key");
    }
}

const json& require_object(const json& root, const std::string& key) {
    if (!root.contains(key)) throw ConfigError(key, "missing required section");
    const json& obj = root.at(key);
    if (!obj.is_object()) throw ConfigError(key, "must be an object");
    return obj;
}

double number(const json& obj, const std::string& section, const std::string& key, std::optional<double> fallback) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(join(section, key), "missing required key");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(join(section, key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(join(section, key), "must be finite");
    return d;
}

double positive(const json& obj, const std::string& section, const std::string& key, std::optional<double> fallback) {
    const double v = number(obj, section, key, fallback);
    if (!(v > 0.0)) throw ConfigError(join(section, key), key + " must be positive");
    return v;
}

std::vector<double> number_list(const json& obj, const std::string& section, const std::string& key,
                                std::optional<double> fallback) {
    if (obj.contains(key) && obj.at(key).is_array()) {
        std::vector<double> out;
        for (const json& v : obj.at(key)) {
            if (!v.is_number()) throw ConfigError(join(section, key), "list entries must be numbers");
            out.push_back(v.get<double>());
        }
        if (out.empty()) throw ConfigError(join(section, key), "sweep list must be nonempty");
        return out;
    }
    return {number(obj, section, key, fallback)};
}

std::string text(const json& obj, const std::string& section, const std::string& key, std::optional<std::string> fallback) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(join(section, key), "missing required key");
    }
    if (!obj.at(key).is_string()) throw ConfigError(join(section, key), "must be a string");
    return obj.at(key).get<std::string>();
}

int integer(const json& obj, const std::string& section, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(join(section, key), "must be an integer");
    return v.get<int>();
}

bool boolean(const json& obj, const std::string& section, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ConfigError(join(section, key), "must be true or false");
    return obj.at(key).get<bool>();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

}  // namespace

RunConfig parse_config(const std::string& document) {
    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "top level must be an object");
    reject_unknown(root, "", {"beam", "material", "fractional", "mesh", "loads", "bcs", "solver", "output"});

    RunConfig c;
    BeamSpec& s = c.spec;

    const json& beam = require_object(root, "beam");
    reject_unknown(beam, "beam", {"L", "b", "h"});
    s.L = positive(beam, "beam", "L", std::nullopt);
    s.b = positive(beam, "beam", "b", std::nullopt);
    s.h = positive(beam, "beam", "h", std::nullopt);

    const json material = root.contains("material") ? require_object(root, "material") : json::object();
    reject_unknown(material, "material", {"E", "alpha0", "nu", "rho0", "Cv0", "T0"});
    s.E = positive(material, "material", "E", 70e9);
    s.alpha0 = number(material, "material", "alpha0", 23e-6);
    s.nu = number(material, "material", "nu", 0.3);
    if (!(s.nu > -1.0 && s.nu < 0.5)) throw ConfigError("material.nu", "nu must lie in (-1, 0.5)");
    s.rho0 = positive(material, "material", "rho0", 2700.0);
    s.Cv0 = positive(material, "material", "Cv0", 900.0);
    s.T0 = positive(material, "material", "T0", 293.15);

    const json& frac = require_object(root, "fractional");
    reject_unknown(frac, "fractional", {"alpha", "l_f"});
    c.alpha = number_list(frac, "fractional", "alpha", std::nullopt);
    for (double a : c.alpha) {
        if (!(a > 0.0 && a <= 1.0)) throw ConfigError("fractional.alpha", "alpha must lie in (0,1]");
    }
    c.l_f = number_list(frac, "fractional", "l_f", std::nullopt);
    for (double l : c.l_f) {
        if (!(l > 0.0)) throw ConfigError("fractional.l_f", "l_f must be positive");
        if (l > s.L) throw ConfigError("fractional.l_f", "l_f must not exceed the beam length");
    }

    if (root.contains("mesh")) {
        const json& mesh = require_object(root, "mesh");
        reject_unknown(mesh, "mesh", {"Ne", "N_inf"});
        if (mesh.contains("Ne") && mesh.contains("N_inf")) {
            throw ConfigError("mesh", "Ne and N_inf conflict; give exactly one");
        }
        if (mesh.contains("Ne")) {
            const int ne = integer(mesh, "mesh", "Ne", 0);
            if (ne < 2) throw ConfigError("mesh.Ne", "Ne must be at least 2");
            c.elements = ne;
        } else {
            c.n_inf = positive(mesh, "mesh", "N_inf", 10.0);
        }
    }

    const json& loads = require_object(root, "loads");
    reject_unknown(loads, "loads", {"q0", "axial", "thermal"});
    c.q0 = number_list(loads, "loads", "q0", 0.0);
    if (loads.contains("axial")) {
        const json& ax = require_object(loads, "axial");
        reject_unknown(ax, "loads.axial", {"kind", "magnitude"});
        const std::string kind = text(ax, "loads.axial", "kind", "none");
        if (kind == "none") c.axial = AxialLoadKind::none;
        else if (kind == "uniform") c.axial = AxialLoadKind::uniform;
        else throw ConfigError("loads.axial.kind", "expected none or uniform");
        c.axial_magnitude = number(ax, "loads.axial", "magnitude", c.axial == AxialLoadKind::none ? std::optional<double>(0.0) : std::nullopt);
    }
    if (loads.contains("thermal")) {
        const json& th = require_object(loads, "thermal");
        reject_unknown(th, "loads.thermal", {"kind", "magnitude"});
        const std::string kind = text(th, "loads.thermal", "kind", std::nullopt);
        try {
            c.thermal = parse_thermal_kind(kind);
        } catch (const DomainError& e) {
            throw ConfigError("loads.thermal.kind", e.what());
        }
        if (c.thermal == ThermalField::Kind::custom) {
            throw ConfigError("loads.thermal.kind", "custom fields are only available through the library");
        }
        c.thermal_magnitude = number_list(th, "loads.thermal", "magnitude",
                                          c.thermal == ThermalField::Kind::none ? std::optional<double>(0.0) : std::nullopt);
    } else {
        c.thermal_magnitude = {0.0};
    }

    const json& bcs = require_object(root, "bcs");
    reject_unknown(bcs, "bcs", {"left", "right"});
    for (const char* side : {"left", "right"}) {
        try {
            const BoundaryCondition bc = parse_boundary_condition(text(bcs, "bcs", side, std::nullopt));
            (std::string(side) == "left" ? s.bc_left : s.bc_right) = bc;
        } catch (const DomainError& e) {
            throw ConfigError(std::string("bcs.") + side, e.what());
        }
    }

    c.solver.mode = SolveMode::linear;
    if (root.contains("solver")) {
        const json& sv = require_object(root, "solver");
        reject_unknown(sv, "solver", {"mode", "tol", "max_iters", "load_steps", "thermal_geometric_stiffness",
                                      "thermal_rows", "ramp", "jacobi_points", "outer_points"});
        const std::string mode = text(sv, "solver", "mode", "linear");
        if (mode == "linear") c.solver.mode = SolveMode::linear;
        else if (mode == "nonlinear") c.solver.mode = SolveMode::nonlinear;
        else throw ConfigError("solver.mode", "expected linear or nonlinear");
        c.solver.tol_rel_residual = positive(sv, "solver", "tol", 1e-8);
        c.solver.max_iters = integer(sv, "solver", "max_iters", 50);
        if (c.solver.max_iters < 1) throw ConfigError("solver.max_iters", "max_iters must be at least 1");
        c.solver.load_steps = integer(sv, "solver", "load_steps", 10);
        if (c.solver.load_steps < 1) throw ConfigError("solver.load_steps", "load_steps must be at least 1");
        c.solver.thermal_geometric_stiffness = boolean(sv, "solver", "thermal_geometric_stiffness", true);
        const std::string rows = text(sv, "solver", "thermal_rows", "nonlocal");
        if (rows == "nonlocal") c.model.thermal_rows = ThermalRows::nonlocal;
        else if (rows == "literal") c.model.thermal_rows = ThermalRows::literal;
        else throw ConfigError("solver.thermal_rows", "expected nonlocal or literal");
        const std::string ramp = text(sv, "solver", "ramp", "joint");
        if (ramp == "joint") c.solver.ramp = LoadRamp::joint;
        else if (ramp == "thermal_first") c.solver.ramp = LoadRamp::thermal_first;
        else throw ConfigError("solver.ramp", "expected joint or thermal_first");
        c.model.quadrature.jacobi_points = integer(sv, "solver", "jacobi_points", 6);
        c.model.quadrature.outer_points = integer(sv, "solver", "outer_points", 4);
        if (c.model.quadrature.jacobi_points < 1) throw ConfigError("solver.jacobi_points", "must be at least 1");
        if (c.model.quadrature.outer_points < 1) throw ConfigError("solver.outer_points", "must be at least 1");
    }

    if (root.contains("output")) {
        const json& out = require_object(root, "output");
        reject_unknown(out, "output", {"directory", "quantities", "stress_points", "sweep_parameter"});
        c.output.directory = text(out, "output", "directory", "out");
        if (out.contains("quantities")) {
            const json& q = out.at("quantities");
            if (!q.is_array()) throw ConfigError("output.quantities", "must be a list");
            c.output.displacement = c.output.stress = c.output.sweep = false;
            for (const json& item : q) {
                const std::string name = item.is_string() ? item.get<std::string>() : "";
                if (name == "displacement") c.output.displacement = true;
                else if (name == "stress") c.output.stress = true;
                else if (name == "sweep") c.output.sweep = true;
                else throw ConfigError("output.quantities", "expected displacement, stress or sweep");
            }
        }
        c.output.stress_points = integer(out, "output", "stress_points", 21);
        if (c.output.stress_points < 2) throw ConfigError("output.stress_points", "must be at least 2");
        c.output.sweep_parameter = text(out, "output", "sweep_parameter", "");
        if (!c.output.sweep_parameter.empty()) {
            const std::set<std::string> names{"alpha", "l_f", "q0", "theta"};
            if (!names.count(c.output.sweep_parameter)) {
                throw ConfigError("output.sweep_parameter", "expected alpha, l_f, q0 or theta");
            }
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open configuration file");
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(path, "cannot read configuration file");
    return parse_config(ss.str());
}

std::vector<std::string> echo_config(const RunConfig& c) {
    const BeamSpec& s = c.spec;
    std::vector<std::string> out = {
        "beam.L = " + fmt(s.L),
        "beam.b = " + fmt(s.b),
        "beam.h = " + fmt(s.h),
        "material.E = " + fmt(s.E),
        "material.alpha0 = " + fmt(s.alpha0),
        "material.nu = " + fmt(s.nu),
        "material.rho0 = " + fmt(s.rho0),
        "material.Cv0 = " + fmt(s.Cv0),
        "material.T0 = " + fmt(s.T0),
        "fractional.alpha = " + fmt_list(c.alpha),
        "fractional.l_f = " + fmt_list(c.l_f),
        c.elements ? "mesh.Ne = " + std::to_string(*c.elements) : "mesh.N_inf = " + fmt(c.n_inf),
        "loads.q0 = " + fmt_list(c.q0),
        std::string("loads.axial.kind = ") + (c.axial == AxialLoadKind::uniform ? "uniform" : "none"),
        "loads.axial.magnitude = " + fmt(c.axial_magnitude),
        "loads.thermal.kind = " + std::string(to_string(c.thermal)),
        "loads.thermal.magnitude = " + fmt_list(c.thermal_magnitude),
        "bcs.left = " + std::string(to_string(s.bc_left)),
        "bcs.right = " + std::string(to_string(s.bc_right)),
        std::string("solver.mode = ") + (c.solver.mode == SolveMode::linear ? "linear" : "nonlinear"),
        "solver.tol = " + fmt(c.solver.tol_rel_residual),
        "solver.max_iters = " + std::to_string(c.solver.max_iters),
        "solver.load_steps = " + std::to_string(c.solver.load_steps),
        std::string("solver.thermal_geometric_stiffness = ") + (c.solver.thermal_geometric_stiffness ? "true" : "false"),
        std::string("solver.thermal_rows = ") + (c.model.thermal_rows == ThermalRows::nonlocal ? "nonlocal" : "literal"),
        std::string("solver.ramp = ") + (c.solver.ramp == LoadRamp::joint ? "joint" : "thermal_first"),
        "solver.jacobi_points = " + std::to_string(c.model.quadrature.jacobi_points),
        "solver.outer_points = " + std::to_string(c.model.quadrature.outer_points),
        "output.directory = " + c.output.directory,
        "output.stress_points = " + std::to_string(c.output.stress_points),
        "output.sweep_parameter = " + (c.output.sweep_parameter.empty() ? std::string("auto") : c.output.sweep_parameter),
    };
    std::string q;
    for (auto [on, name] : {std::pair{c.output.displacement, "displacement"}, std::pair{c.output.stress, "stress"},
                            std::pair{c.output.sweep, "sweep"}}) {
        if (on) q += (q.empty() ? "" : ", ") + std::string(name);
    }
    out.push_back("output.quantities = [" + q + "]");
    return out;
}

std::vector<std::string> swept_parameters(const RunConfig& c) {
    std::vector<std::string> names;
    if (c.alpha.size() > 1) names.push_back("alpha");
    if (c.l_f.size() > 1) names.push_back("l_f");
    if (c.q0.size() > 1) names.push_back("q0");
    if (c.thermal_magnitude.size() > 1) names.push_back("theta");
    return names;
}

std::vector<GridPoint> grid(const RunConfig& c) {
    std::vector<GridPoint> pts;
    for (double a : c.alpha)
        for (double l : c.l_f)
            for (double q : c.q0)
                for (double t : c.thermal_magnitude) pts.push_back({a, l, q, t});
    return pts;
}

double grid_value(const GridPoint& p, const std::string& name) {
    if (name == "alpha") return p.alpha;
    if (name == "l_f") return p.l_f;
    if (name == "q0") return p.q0;
    if (name == "theta") return p.theta;
    throw DomainError("unknown grid parameter '" + name + "'");
}

Model build_model(const RunConfig& c, const GridPoint& p) {
    ThermalField field;
    switch (c.thermal) {
        case ThermalField::Kind::uniform: field = ThermalField::uniform(p.theta); break;
        case ThermalField::Kind::linear_thickness: field = ThermalField::linear_thickness(p.theta); break;
        case ThermalField::Kind::parabolic_length: field = ThermalField::parabolic_length(p.theta); break;
        default: break;
    }
    LoadCase loads = LoadCase::uniform(p.q0, field);
    if (c.axial == AxialLoadKind::uniform) {
        const double fa = c.axial_magnitude;
        loads.axial = [fa](double) { return fa; };
    }
    const Mesh mesh = c.elements ? Mesh(c.spec.L, *c.elements) : Mesh::from_horizon(c.spec.L, p.l_f, c.n_inf);
    return Model(c.spec, FractionalParams{p.alpha, p.l_f}, mesh, std::move(loads), c.model);
}

}  // namespace ffem
