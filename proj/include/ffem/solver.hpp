#pragma once

#include "ffem/assembly.hpp"

#include <Eigen/Core>

#include <vector>

namespace ffem {

enum class SolveMode { linear, nonlinear };

/// How the load factors grow over the load steps.
enum class LoadRamp {
    joint,          ///< mechanical and thermal loads share one ramp
    thermal_first,  ///< thermal load ramped to full first, then the mechanical load
};

struct SolverConfig {
    double tol_rel_residual = 1e-8;
    int max_iters = 50;
    int load_steps = 10;
    SolveMode mode = SolveMode::nonlinear;
    /// Include the thermal geometric stiffness in the tangent. Off gives a modified Newton.
    bool thermal_geometric_stiffness = true;
    LoadRamp ramp = LoadRamp::joint;

    void validate() const;
};

/// Nodal solution plus the Newton residual history.
struct SolutionField {
    Eigen::VectorXd state;                     ///< global node-interleaved vector
    std::vector<double> x;                     ///< node positions
    std::vector<std::vector<double>> history;  ///< relative residual norms, one list per load step
    int iterations = 0;                        ///< Newton iterations summed over all steps

    int nodes() const noexcept { return static_cast<int>(x.size()); }
    double u0(int node) const { return state(DofMap::axial(node)); }
    double w0(int node) const { return state(DofMap::deflection(node)); }
    double slope(int node) const { return state(DofMap::slope(node)); }
    double max_abs_u() const;
    double max_abs_w() const;
};

/// Solves the linear problem (nonlinear coupling dropped) on the reduced dofs.
SolutionField solve_linear(const Model& model);
/// Global solution vector of K_linear d = F_total; throws SingularSystemError.
Eigen::VectorXd solve_linear(const GlobalSystem& system);

/// Internal virtual-work forces minus the mechanical loads, in global numbering.
Eigen::VectorXd residual(const Model& model, const Eigen::VectorXd& state, bool nonlinear = true,
                         LoadFactors factors = {});
/// Analytic Jacobian of residual().
SparseMatrix tangent_stiffness(const Model& model, const Eigen::VectorXd& state, bool nonlinear = true,
                               LoadFactors factors = {}, bool thermal_geometric_stiffness = true);

/// Load-stepped Newton-Raphson. In linear mode this is solve_linear. Throws
/// ConvergenceError (carrying the history) on non-convergence or divergence.
SolutionField newton_raphson(const Model& model, const SolverConfig& config = {});

}  // namespace ffem
