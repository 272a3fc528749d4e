#pragma once

// Independent checks of the solver: classical local closed forms, the discrete
// potential energy and its direct minimization, and the strong-form residual.

#include "ffem/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ffem {

/// A catalogued local (alpha = 1) case with a classical closed-form answer.
struct OracleCase {
    std::string id;
    BoundaryCondition bc_left = BoundaryCondition::pinned;
    BoundaryCondition bc_right = BoundaryCondition::pinned;
    std::string load;        ///< human-readable load description
    std::string quantity;    ///< what local_closed_form returns
    std::string derivation;  ///< classical source of the closed form
    double tolerance = 5e-3; ///< relative tolerance expected of the f-FEM at alpha = 1
};

/// Load magnitudes the closed forms depend on.
struct OracleLoads {
    double q0 = 0.0;     ///< uniform transverse load [N/m]
    double theta = 0.0;  ///< theta1 for the thermal-moment case, theta0 for the axial one [K]
};

const std::vector<OracleCase>& oracle_catalog();
/// Throws DomainError for an uncatalogued id.
const OracleCase& find_oracle_case(const std::string& id);

/// Catalogued reference value: max w0 [m], or the axial resultant N [N] for the
/// uniform-temperature clamped case.
double local_closed_form(const OracleCase& c, const BeamSpec& spec, const OracleLoads& loads);

/// Closed-form midplane displacement at x1.
struct ClosedFormPoint {
    double u0 = 0.0;
    double w0 = 0.0;
    double slope = 0.0;
};
ClosedFormPoint local_closed_form_profile(const OracleCase& c, const BeamSpec& spec,
                                          const OracleLoads& loads, double x1);

/// The model and load case of a catalogued case on a given mesh.
Model oracle_model(const OracleCase& c, const BeamSpec& spec, const OracleLoads& loads, int elements);

/// Total potential energy: 1/2 int sigma eps dV - 1/2 int E alpha0 theta eps dV minus the
/// work of the mechanical loads. The thickness integral is done numerically with the
/// prescribed temperature field, independently of the thermal resultants.
double discrete_energy(const Model& model, const Eigen::VectorXd& state, bool nonlinear = true,
                       LoadFactors factors = {});

struct MinimizerOptions {
    bool nonlinear = true;
    int restarts = 3;
    int max_iters = 2000;
    std::uint64_t seed = 12345;
    double gradient_tol = 1e-13;  ///< on the scaled gradient, relative to its starting value
};

struct DirectMinimum {
    SolutionField solution;
    double energy = 0.0;
    double gradient_norm = 0.0;  ///< scaled gradient at the returned state
    /// Relative energy decrease the derivative-free guard pass found after the
    /// gradient phase. Large values mean the gradient and energy disagree.
    double guard_improvement = 0.0;
    bool converged = false;
};

/// Minimizes discrete_energy over the free dofs with BFGS (energy line search, analytic
/// residual as gradient) from several starting points, then runs a coordinate search on
/// the best state. Only for tiny meshes (at most 8 elements).
DirectMinimum minimize_energy_direct(const Model& model, const MinimizerOptions& options = {});

struct StrongFormResidual {
    std::vector<double> x;
    std::vector<double> residual;  ///< (adjoint derivative of N) + F_a at x [N/m]
    double normalization = 1.0;    ///< max |F_a|, or A11 / L when F_a vanishes
    double max_normalized = 0.0;
};

/// Axial equilibrium in strong form for a linear solution. N is sampled at element
/// midpoints, fitted with a cubic spline and differentiated with the adjoint of the
/// fractional derivative. Points closer than 2 l_f to an end are skipped (there the
/// adjoint involves truncated horizons of the neighbours). Needs the nonlocal thermal
/// rows; throws DomainError when no interior point remains.
StrongFormResidual strong_form_residual(const Model& model, const SolutionField& solution,
                                        int samples = 41);

}  // namespace ffem
