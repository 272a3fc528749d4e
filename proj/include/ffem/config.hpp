#pragma once

// JSON run configuration: parsing with defaults, validation that names the offending
// key, and a flat key = value echo of the resolved values.

#include "ffem/model.hpp"
#include "ffem/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffem {

enum class AxialLoadKind { none, uniform };

struct OutputConfig {
    std::string directory = "out";
    bool displacement = true;
    bool stress = false;
    bool sweep = true;
    int stress_points = 21;
    /// Parameter the sweep tables run along; empty picks the last list-valued one.
    std::string sweep_parameter;
};

struct RunConfig {
    BeamSpec spec;
    std::vector<double> alpha;
    std::vector<double> l_f;
    std::optional<int> elements;  ///< fixed Ne, or
    double n_inf = 10.0;          ///< l_f / le when elements is unset
    std::vector<double> q0;
    AxialLoadKind axial = AxialLoadKind::none;
    double axial_magnitude = 0.0;
    ThermalField::Kind thermal = ThermalField::Kind::none;
    std::vector<double> thermal_magnitude;
    SolverConfig solver;
    ModelOptions model;
    OutputConfig output;
};

/// Parses a JSON document. Throws ConfigError naming the key on unknown or missing
/// keys, wrong types and out-of-range values.
RunConfig parse_config(const std::string& text);
/// Reads and parses a file; IoError when unreadable.
RunConfig load_config(const std::string& path);

/// Every resolved value, defaults included, as "section.key = value" lines.
std::vector<std::string> echo_config(const RunConfig& config);

/// One point of the sweep grid.
struct GridPoint {
    double alpha = 1.0;
    double l_f = 0.0;
    double q0 = 0.0;
    double theta = 0.0;
};

/// Names of the list-valued parameters with more than one value, in grid order
/// ("alpha", "l_f", "q0", "theta").
std::vector<std::string> swept_parameters(const RunConfig& config);
/// Cartesian grid, alpha slowest and theta fastest.
std::vector<GridPoint> grid(const RunConfig& config);
double grid_value(const GridPoint& p, const std::string& name);

/// Model of one grid point.
Model build_model(const RunConfig& config, const GridPoint& point);

}  // namespace ffem
